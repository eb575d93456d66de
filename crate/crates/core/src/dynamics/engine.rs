use std::fmt;

use serde::{Serialize, Serializer};

use super::{EvolutionTrace, Expansion};
use crate::error::{Error, Result};
use crate::graph::{Distance, Eccentricities, Graph, VertexId};
use crate::tactics::{RsetMode, SelectionContext, TacticKind};

/// Default cap on timestamps per run.
pub const DEFAULT_HORIZON: usize = 500;

/// One integration process to simulate.
#[derive(Debug, Clone)]
pub struct IpRun {
    pub initial: Graph,
    pub newcomer: VertexId,
    pub tactic: TacticKind,
    pub rset_mode: RsetMode,
    /// Most links the newcomer may build in one timestamp.
    pub k: usize,
    pub max_steps: usize,
    /// Keep a copy of every instance `G_0, G_1, ...` in the result.
    pub record_snapshots: bool,
}

impl IpRun {
    pub fn new(initial: Graph, newcomer: VertexId, tactic: TacticKind) -> Self {
        Self {
            initial,
            newcomer,
            tactic,
            rset_mode: RsetMode::default(),
            k: tactic.max_links(),
            max_steps: DEFAULT_HORIZON,
            record_snapshots: false,
        }
    }

    pub fn horizon(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn rset_mode(mut self, mode: RsetMode) -> Self {
        self.rset_mode = mode;
        self
    }

    pub fn recording(mut self) -> Self {
        self.record_snapshots = true;
        self
    }
}

/// Timestamps with a nonempty newcomer move before it entered the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cost {
    Finite(usize),
    DidNotEnter,
}

impl Cost {
    pub fn finite(self) -> Option<usize> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::DidNotEnter => None,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(c) => c.fmt(f),
            Cost::DidNotEnter => f.write_str("did-not-enter"),
        }
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cost::Finite(c) => s.serialize_u64(*c as u64),
            Cost::DidNotEnter => s.serialize_str("did-not-enter"),
        }
    }
}

/// Shape of one network instance as seen by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepMeta {
    pub step: usize,
    pub vertices: usize,
    pub edges: usize,
    pub radius: Distance,
    pub diameter: Distance,
    pub newcomer_ecc: Distance,
    pub newcomer_in_center: bool,
    /// Links the newcomer built going into this instance.
    pub links: Vec<VertexId>,
    /// Edges the environment added going into this instance.
    pub expansion_edges: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IpResult {
    pub tactic: TacticKind,
    pub cost: Cost,
    /// Index of the first instance with the newcomer in the center.
    pub entered_at: Option<usize>,
    pub edges_built: Vec<VertexId>,
    pub horizon: usize,
    pub steps: Vec<StepMeta>,
    #[serde(skip)]
    pub snapshots: Vec<Graph>,
    #[serde(skip)]
    pub final_graph: Graph,
}

impl IpResult {
    /// `tactic,seed,cost,entered_at`
    pub fn csv_summary(&self, seed: u64) -> String {
        let entered = self.entered_at.map(|t| t.to_string()).unwrap_or_default();
        format!("{},{},{},{}", self.tactic, seed, self.cost, entered)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn check_move(g: &Graph, s: &[VertexId], u: VertexId) -> Result<()> {
    for (i, &v) in s.iter().enumerate() {
        if v == u {
            return Err(Error::InvalidMove("newcomer cannot link to itself".into()));
        }
        if !g.contains(v) {
            return Err(Error::VertexNotFound(v));
        }
        if g.has_edge(u, v) {
            return Err(Error::InvalidMove(format!("{v} is already a neighbor")));
        }
        if s[..i].contains(&v) {
            return Err(Error::InvalidMove(format!("{v} listed twice")));
        }
    }
    Ok(())
}

fn apply_step(g: &mut Graph, f: &Expansion, s: &[VertexId], u: VertexId) -> Result<()> {
    check_move(g, s, u)?;
    f.validate(g, u)?;
    f.apply(g);
    if !s.is_empty() {
        g.add_vertex(u);
        for &v in s {
            g.add_edge(u, v)?;
        }
    }
    Ok(())
}

/// One simultaneous move: the expansion `f` and the newcomer's links to `s`,
/// both judged against `g`.
pub fn ip_step(g: &Graph, f: &Expansion, s: &[VertexId], u: VertexId) -> Result<Graph> {
    let mut h = g.clone();
    apply_step(&mut h, f, s, u)?;
    Ok(h)
}

fn meta(step: usize, g: &Graph, ecc: &Eccentricities, u: VertexId, links: Vec<VertexId>, f: usize) -> StepMeta {
    let ui = g.index_of(u);
    StepMeta {
        step,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        radius: ecc.radius(),
        diameter: ecc.diameter(),
        newcomer_ecc: ui.map_or(Distance::Unreachable, |i| ecc.ecc(i)),
        newcomer_in_center: ui.is_some_and(|i| ecc.in_center(i)),
        links,
        expansion_edges: f,
    }
}

fn simulate<T: EvolutionTrace + ?Sized>(
    run: &IpRun,
    trace: &mut T,
    stop_on_entry: bool,
) -> Result<IpResult> {
    let u = run.newcomer;
    if run.initial.contains(u) {
        return Err(Error::InvalidMove(format!("newcomer {u} is already in the initial graph")));
    }
    if run.k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut g = run.initial.clone();
    let mut ecc = Eccentricities::compute(&g);
    let mut steps = vec![meta(0, &g, &ecc, u, Vec::new(), 0)];
    let mut snapshots = Vec::new();
    if run.record_snapshots {
        snapshots.push(g.clone());
    }
    let mut exhausted = false;
    let mut cost = 0;
    let mut edges_built = Vec::new();
    let mut entered_at = None;
    let mut step = 0;
    loop {
        let central = g.index_of(u).is_some_and(|i| ecc.in_center(i));
        if central && entered_at.is_none() {
            entered_at = Some(step);
            if stop_on_entry {
                break;
            }
        }
        if step == run.max_steps {
            break;
        }
        let s = {
            let ctx = SelectionContext::with_eccentricities(&g, u, run.rset_mode, ecc);
            run.tactic.select(&ctx)
        };
        if s.len() > run.k {
            return Err(Error::Confinement {
                size: s.len(),
                bound: run.k,
            });
        }
        let f = if exhausted {
            None
        } else {
            trace.next_expansion(&g, u, &s)?
        };
        exhausted |= f.is_none();
        if exhausted && s.is_empty() && stop_on_entry {
            // static network and a newcomer with nothing left to do
            break;
        }
        let f = f.unwrap_or_default();
        apply_step(&mut g, &f, &s, u)?;
        step += 1;
        if entered_at.is_none() && !s.is_empty() {
            cost += 1;
        }
        edges_built.extend_from_slice(&s);
        ecc = Eccentricities::compute(&g);
        steps.push(meta(step, &g, &ecc, u, s, f.new_edges.len()));
        if run.record_snapshots {
            snapshots.push(g.clone());
        }
    }
    Ok(IpResult {
        tactic: run.tactic,
        cost: if entered_at.is_some() {
            Cost::Finite(cost)
        } else {
            Cost::DidNotEnter
        },
        entered_at,
        edges_built,
        horizon: run.max_steps,
        steps,
        snapshots,
        final_graph: g,
    })
}

/// Runs the process until the newcomer first enters the center, the
/// horizon is reached, or the trace is exhausted with the tactic out of
/// moves. The tactic acts only while the newcomer is outside the center.
/// Once the trace runs out the network stays static.
pub fn run_ip<T: EvolutionTrace + ?Sized>(run: &IpRun, trace: &mut T) -> Result<IpResult> {
    simulate(run, trace, true)
}

/// Runs exactly `run.max_steps` timestamps with the tactic applied at every
/// one of them, entry or not. `entered_at` and `cost` still describe the
/// first entry.
pub fn trace_ip<T: EvolutionTrace + ?Sized>(run: &IpRun, trace: &mut T) -> Result<IpResult> {
    simulate(run, trace, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::ScriptedTrace;
    use crate::worked_example::{self, NEWCOMER as U};

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn reference(tactic: TacticKind) -> IpResult {
        let run = IpRun::new(worked_example::initial_graph(), U, tactic).horizon(50);
        run_ip(&run, &mut ScriptedTrace::new(worked_example::trace())).unwrap()
    }

    #[test]
    fn step_applies_both_moves() {
        let g0 = worked_example::initial_graph();
        let f = Expansion::pendant(v(9), v(11));
        let g1 = ip_step(&g0, &f, &[v(2)], U).unwrap();
        assert_eq!(g1.vertex_count(), 12);
        assert_eq!(g1.edge_count(), g0.edge_count() + 2);
        assert!(g1.has_edge(v(9), v(11)) && g1.has_edge(U, v(2)));

        let g2 = ip_step(&g1, &Expansion::pendant(v(6), v(12)), &[v(3)], U).unwrap();
        let p = crate::graph::center_profile(&g2).unwrap();
        assert_eq!(p.ecc[&U], Distance::Finite(3));
        assert_eq!(p.radius, Distance::Finite(3));
    }

    #[test]
    fn empty_step_is_identity() {
        let g0 = worked_example::initial_graph();
        assert_eq!(ip_step(&g0, &Expansion::new(), &[], U).unwrap(), g0);
    }

    #[test]
    fn step_rejects_bad_moves() {
        let g0 = worked_example::initial_graph();
        let e = Expansion::new();
        assert!(ip_step(&g0, &e, &[U], U).is_err());
        let g1 = ip_step(&g0, &e, &[v(2)], U).unwrap();
        assert!(matches!(ip_step(&g1, &e, &[v(2)], U), Err(Error::InvalidMove(_))));
        assert!(ip_step(&g1, &Expansion::pendant(U, v(50)), &[], U).is_err());
        let mut detached = Expansion::new();
        detached.new_vertices.extend([v(50), v(51)]);
        detached.add_edge(v(50), v(51));
        assert!(ip_step(&g1, &detached, &[], U).is_err());
    }

    #[test]
    fn reference_costs() {
        let r = reference(TacticKind::RMax);
        assert_eq!(r.cost, Cost::Finite(2));
        assert_eq!(r.edges_built, vec![v(2), v(3)]);
        assert_eq!(reference(TacticKind::RBtw).cost, Cost::Finite(2));
        let m = reference(TacticKind::Muf);
        assert_eq!(m.cost, Cost::Finite(2));
        assert_eq!(m.edges_built, vec![v(2), v(3)]);
    }

    #[test]
    fn result_bookkeeping() {
        let r = reference(TacticKind::SMax);
        let n = r.cost.finite().unwrap();
        assert_eq!(r.entered_at, Some(n));
        assert_eq!(r.edges_built.len(), n);
        assert_eq!(r.steps.len(), n + 1);
        assert!(r.steps.last().unwrap().newcomer_in_center);
        assert!(r.steps[..n].iter().all(|m| !m.newcomer_in_center));
        assert_eq!(r.csv_summary(7), format!("smax,7,{n},{n}"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(json["cost"], n);
        assert_eq!(json["steps"][0]["newcomer_ecc"], serde_json::Value::Null);
    }

    #[test]
    fn horizon_gives_did_not_enter() {
        // a flood of size 1 on a long path cannot finish in two steps
        let path = Graph::from_edges((1u32..30).map(|i| (i, i + 1))).unwrap();
        let run = IpRun::new(path, U, TacticKind::flood(1).unwrap()).horizon(2);
        let r = run_ip(&run, &mut ScriptedTrace::default()).unwrap();
        assert_eq!(r.cost, Cost::DidNotEnter);
        assert_eq!(r.entered_at, None);
        assert_eq!(r.edges_built.len(), 2);
        assert_eq!(r.csv_summary(1), "flood:1,1,did-not-enter,");
    }

    #[test]
    fn rejects_newcomer_in_initial_graph() {
        let run = IpRun::new(Graph::cycle(4), VertexId(1), TacticKind::SMax);
        assert!(run_ip(&run, &mut ScriptedTrace::default()).is_err());
    }
}
