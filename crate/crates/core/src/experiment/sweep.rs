use super::{fresh_newcomer, sort_rows, ResultRow, RowTemplate};
use crate::dynamics::DEFAULT_HORIZON;
use crate::error::{Error, Result};
use crate::generators::{Generator, Model, ModelParams};
use crate::ingest::{EdgeEvent, ReplayTrace, SnapshotPolicy};
use crate::rng;
use crate::tactics::{RsetMode, TacticKind};

/// Which parameter a model sweep varies.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    /// Average degree, with growth fixed.
    Degree(Vec<u32>),
    /// Vertices added per timestamp, with the degree fixed.
    Growth(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct Exp2Config {
    pub models: Vec<Model>,
    pub tactics: Vec<TacticKind>,
    pub sweep: Sweep,
    /// Degree used by growth sweeps.
    pub fixed_d: u32,
    /// Growth used by degree sweeps.
    pub fixed_ell: usize,
    pub size: usize,
    pub trials: usize,
    pub seed: u64,
    pub horizon: usize,
    pub rset_mode: RsetMode,
    pub timing: bool,
}

impl Exp2Config {
    fn base(sweep: Sweep) -> Self {
        Self {
            models: vec![Model::Ba, Model::Jr { p: 0.5 }, Model::RichClub, Model::Onion],
            tactics: TacticKind::COMPARED.to_vec(),
            sweep,
            fixed_d: 6,
            fixed_ell: 1,
            size: 500,
            trials: 100,
            seed: 0,
            horizon: DEFAULT_HORIZON,
            rset_mode: RsetMode::default(),
            timing: false,
        }
    }

    /// `d = 2..=10`, one vertex per timestamp.
    pub fn degree_sweep() -> Self {
        Self::base(Sweep::Degree((2..=10).collect()))
    }

    /// `d = 6`, `ell` in {10, 50, 100, 200, 500}.
    pub fn growth_sweep() -> Self {
        Self::base(Sweep::Growth(vec![10, 50, 100, 200, 500]))
    }

    fn settings(&self) -> Vec<(u32, usize)> {
        match &self.sweep {
            Sweep::Degree(ds) => ds.iter().map(|&d| (d, self.fixed_ell)).collect(),
            Sweep::Growth(ls) => ls.iter().map(|&l| (self.fixed_d, l)).collect(),
        }
    }

    fn name(&self) -> &'static str {
        match self.sweep {
            Sweep::Degree(_) => "exp2-degree",
            Sweep::Growth(_) => "exp2-growth",
        }
    }
}

/// Model sweeps. For every model, setting and trial an initial network of
/// `size` vertices is grown, and each tactic then runs against the same
/// model continuing from it (same trace seed for every tactic).
pub fn experiment2(cfg: &Exp2Config) -> Result<Vec<ResultRow>> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for &model in &cfg.models {
        for (d, ell) in cfg.settings() {
            log::info!("{}: {model} d={d} ell={ell}", cfg.name());
            for trial in 0..cfg.trials {
                let seed = rng::mix(&[cfg.seed, d as u64, ell as u64, trial as u64]);
                let params = ModelParams::new(model, d).size(cfg.size).growth(ell).seed(seed);
                let tpl = RowTemplate {
                    experiment: cfg.name(),
                    source: model.to_string(),
                    d: Some(d),
                    ell,
                    start: None,
                    trial,
                    seed,
                    horizon: cfg.horizon,
                };
                let initial = Generator::new(params).and_then(|mut g| g.build_initial());
                let initial = match initial {
                    Ok(g) => g,
                    Err(e) => {
                        rows.extend(cfg.tactics.iter().map(|&t| tpl.failure(t, &e)));
                        continue;
                    }
                };
                let u = fresh_newcomer(&initial);
                let trace_params = params.seed(rng::mix(&[seed, 1]));
                for &tactic in &cfg.tactics {
                    let row = match Generator::new(trace_params) {
                        Ok(mut trace) => tpl.run(&initial, u, tactic, cfg.rset_mode, cfg.timing, &mut trace),
                        Err(e) => tpl.failure(tactic, &e),
                    };
                    rows.push(row);
                }
            }
        }
    }
    sort_rows(&mut rows);
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct Exp1Config {
    /// Name written to the `source` column.
    pub dataset: String,
    pub policy: SnapshotPolicy,
    /// Snapshot counts to start from.
    pub starts: Vec<usize>,
    pub interval: usize,
    pub tactics: Vec<TacticKind>,
    pub horizon: usize,
    pub rset_mode: RsetMode,
    pub timing: bool,
}

impl Exp1Config {
    pub fn new(dataset: impl Into<String>, policy: SnapshotPolicy, starts: Vec<usize>, interval: usize) -> Self {
        Self {
            dataset: dataset.into(),
            policy,
            starts,
            interval,
            tactics: TacticKind::COMPARED.to_vec(),
            horizon: DEFAULT_HORIZON,
            rset_mode: RsetMode::default(),
            timing: false,
        }
    }
}

/// Dataset replays: for every start snapshot and tactic, the newcomer joins
/// the largest component at that snapshot while the remaining events
/// arrive `interval` at a time.
pub fn experiment1(events: &[EdgeEvent], cfg: &Exp1Config) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for &start in &cfg.starts {
        log::info!("exp1: {} start {start}", cfg.dataset);
        let tpl = RowTemplate {
            experiment: "exp1",
            source: cfg.dataset.clone(),
            d: None,
            ell: cfg.interval,
            start: Some(start),
            trial: 0,
            seed: 0,
            horizon: cfg.horizon,
        };
        // a bad start or interval is a configuration error, not a failed trial
        let base = ReplayTrace::new(events, cfg.policy, start, cfg.interval)?;
        for &tactic in &cfg.tactics {
            let mut trace = base.clone();
            let initial = trace.initial_graph().clone();
            let u = trace.newcomer();
            rows.push(tpl.run(&initial, u, tactic, cfg.rset_mode, cfg.timing, &mut trace));
        }
    }
    sort_rows(&mut rows);
    Ok(rows)
}
