//! Experiment drivers: the reference scenario, dataset replays, model
//! sweeps and temporal profiles, with their CSV/JSON row formats.
//!
//! All drivers are deterministic in their configuration and seed. Rows are
//! sorted by their key columns before they are returned, and wall-clock
//! timing is only recorded on request.

mod fig1;
mod profile;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

pub use fig1::{fig1, Fig1Report, Fig1Row, Fig1Summary};
pub use profile::{default_reference, profile_events, profile_model, profile_scripted};
pub use sweep::{experiment1, experiment2, Exp1Config, Exp2Config, Sweep};

use crate::dynamics::{run_ip, Cost, EvolutionTrace, IpResult, IpRun};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::tactics::{RsetMode, TacticKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// A serializable row type with a fixed CSV header.
pub trait Record: Serialize {
    const HEADER: &'static [&'static str];
}

/// Writes rows as CSV (header always present, even with no rows) or as a
/// JSON array.
pub fn write_records<W: Write, T: Record>(w: W, rows: &[T], format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
            out.write_record(T::HEADER)?;
            for r in rows {
                out.serialize(r)?;
            }
            out.flush()?;
        }
        OutputFormat::Json => {
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

/// One integration process run inside an experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub experiment: String,
    pub source: String,
    pub d: Option<u32>,
    pub ell: usize,
    /// Start snapshot of a dataset replay.
    pub start: Option<usize>,
    pub tactic: TacticKind,
    pub trial: usize,
    pub seed: u64,
    pub initial_vertices: usize,
    /// Empty when the trial failed.
    pub cost: Option<Cost>,
    pub entered_at: Option<usize>,
    pub edges_built: usize,
    pub horizon: usize,
    pub wall_ms: Option<f64>,
    pub error: String,
}

impl Record for ResultRow {
    const HEADER: &'static [&'static str] = &[
        "experiment",
        "source",
        "d",
        "ell",
        "start",
        "tactic",
        "trial",
        "seed",
        "initial_vertices",
        "cost",
        "entered_at",
        "edges_built",
        "horizon",
        "wall_ms",
        "error",
    ];
}

type GroupKey = (String, String, Option<u32>, usize, Option<usize>, TacticKind);

impl ResultRow {
    fn group_key(&self) -> GroupKey {
        (
            self.experiment.clone(),
            self.source.clone(),
            self.d,
            self.ell,
            self.start,
            self.tactic,
        )
    }

    pub fn failed(&self) -> bool {
        self.cost.is_none()
    }
}

pub(crate) fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(|a, b| a.group_key().cmp(&b.group_key()).then(a.trial.cmp(&b.trial)));
}

/// Fields shared by every row of one run setting.
#[derive(Debug, Clone)]
pub(crate) struct RowTemplate {
    pub experiment: &'static str,
    pub source: String,
    pub d: Option<u32>,
    pub ell: usize,
    pub start: Option<usize>,
    pub trial: usize,
    pub seed: u64,
    pub horizon: usize,
}

impl RowTemplate {
    pub fn row(&self, tactic: TacticKind, initial_vertices: usize) -> ResultRow {
        ResultRow {
            experiment: self.experiment.into(),
            source: self.source.clone(),
            d: self.d,
            ell: self.ell,
            start: self.start,
            tactic,
            trial: self.trial,
            seed: self.seed,
            initial_vertices,
            cost: None,
            entered_at: None,
            edges_built: 0,
            horizon: self.horizon,
            wall_ms: None,
            error: String::new(),
        }
    }

    pub fn failure(&self, tactic: TacticKind, err: &Error) -> ResultRow {
        ResultRow {
            error: err.to_string(),
            ..self.row(tactic, 0)
        }
    }

    /// Runs one process and turns the outcome into a row.
    pub fn run<T: EvolutionTrace>(
        &self,
        initial: &Graph,
        newcomer: VertexId,
        tactic: TacticKind,
        rset_mode: RsetMode,
        timing: bool,
        trace: &mut T,
    ) -> ResultRow {
        let run = IpRun::new(initial.clone(), newcomer, tactic)
            .horizon(self.horizon)
            .rset_mode(rset_mode);
        let clock = timing.then(Instant::now);
        let outcome = run_ip(&run, trace);
        let wall_ms = clock.map(|c| c.elapsed().as_secs_f64() * 1e3);
        match outcome {
            Ok(r) => self.finish(tactic, initial.vertex_count(), &r, wall_ms),
            Err(e) => {
                log::warn!("{} {} trial {} failed: {e}", self.source, tactic, self.trial);
                self.failure(tactic, &e)
            }
        }
    }

    fn finish(&self, tactic: TacticKind, n0: usize, r: &IpResult, wall_ms: Option<f64>) -> ResultRow {
        ResultRow {
            cost: Some(r.cost),
            entered_at: r.entered_at,
            edges_built: r.edges_built.len(),
            wall_ms,
            ..self.row(tactic, n0)
        }
    }
}

/// Aggregate over the trials of one setting. Means and deviations are over
/// trials that entered the center; the others are counted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub experiment: String,
    pub source: String,
    pub d: Option<u32>,
    pub ell: usize,
    pub start: Option<usize>,
    pub tactic: TacticKind,
    pub trials: usize,
    pub entered: usize,
    pub did_not_enter: usize,
    pub failed: usize,
    pub mean_cost: Option<f64>,
    pub sd_cost: Option<f64>,
    pub mean_edges: Option<f64>,
}

impl Record for SummaryRow {
    const HEADER: &'static [&'static str] = &[
        "experiment",
        "source",
        "d",
        "ell",
        "start",
        "tactic",
        "trials",
        "entered",
        "did_not_enter",
        "failed",
        "mean_cost",
        "sd_cost",
        "mean_edges",
    ];
}

fn mean_sd(xs: &[f64]) -> (Option<f64>, Option<f64>) {
    if xs.is_empty() {
        return (None, None);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let sd = if xs.len() > 1 {
        Some((xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt())
    } else {
        None
    };
    (Some(mean), sd)
}

pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<GroupKey, Vec<&ResultRow>> = BTreeMap::new();
    for r in rows {
        groups.entry(r.group_key()).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((experiment, source, d, ell, start, tactic), rs)| {
            let costs: Vec<f64> = rs
                .iter()
                .filter_map(|r| r.cost.and_then(Cost::finite))
                .map(|c| c as f64)
                .collect();
            let edges: Vec<f64> = rs
                .iter()
                .filter(|r| r.cost.and_then(Cost::finite).is_some())
                .map(|r| r.edges_built as f64)
                .collect();
            let (mean_cost, sd_cost) = mean_sd(&costs);
            SummaryRow {
                experiment,
                source,
                d,
                ell,
                start,
                tactic,
                trials: rs.len(),
                entered: costs.len(),
                did_not_enter: rs.iter().filter(|r| r.cost == Some(Cost::DidNotEnter)).count(),
                failed: rs.iter().filter(|r| r.failed()).count(),
                mean_cost,
                sd_cost,
                mean_edges: mean_sd(&edges).0,
            }
        })
        .collect()
}

/// Smallest id not used by `g`'s vertices.
pub(crate) fn fresh_newcomer(g: &Graph) -> VertexId {
    VertexId(g.max_id().map_or(0, |m| m.0 + 1))
}
