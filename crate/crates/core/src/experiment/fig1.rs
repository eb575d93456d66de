use serde::Serialize;

use super::Record;
use crate::dynamics::{run_ip, Cost, IpRun, ScriptedTrace};
use crate::error::Result;
use crate::graph::VertexId;
use crate::tactics::{is_broker_set, min_broker_set_bruteforce, BrokerSet, RsetMode, TacticKind};
use crate::worked_example::{self, NEWCOMER};

/// Costs of the reference scenario under smallest-id tie-breaking and the
/// `example` remote-center rule.
const EXPECTED: [(TacticKind, usize); 5] = [
    (TacticKind::SMax, 3),
    (TacticKind::SBtw, 2),
    (TacticKind::RMax, 2),
    (TacticKind::RBtw, 2),
    (TacticKind::Muf, 2),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig1Row {
    pub tactic: TacticKind,
    pub cost: Cost,
    pub entered_at: Option<usize>,
    /// Space-separated ids in the order the links were built.
    pub edges_built: String,
    pub expected_cost: usize,
}

impl Record for Fig1Row {
    const HEADER: &'static [&'static str] = &["tactic", "cost", "entered_at", "edges_built", "expected_cost"];
}

#[derive(Debug, Clone, Serialize)]
pub struct Fig1Report {
    pub rset_mode: RsetMode,
    pub rows: Vec<Fig1Row>,
    pub min_broker_set: Vec<VertexId>,
    /// Whether {3, 8} is a broker set of the initial network.
    pub pair_3_8_is_broker_set: bool,
    pub notes: Vec<String>,
}

/// One line per tactic for terminal output.
#[derive(Debug)]
pub struct Fig1Summary<'a>(pub &'a Fig1Report);

impl std::fmt::Display for Fig1Summary<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in &self.0.rows {
            writeln!(f, "{:<6} cost {:<4} edges [{}]", r.tactic.to_string(), r.cost.to_string(), r.edges_built)?;
        }
        let b: Vec<String> = self.0.min_broker_set.iter().map(ToString::to_string).collect();
        writeln!(f, "minimum broker set of G0: {{{}}}", b.join(", "))?;
        for n in &self.0.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

impl Fig1Report {
    pub fn cost_of(&self, tactic: TacticKind) -> Option<Cost> {
        self.rows.iter().find(|r| r.tactic == tactic).map(|r| r.cost)
    }

    /// RMax and RBtw both enter after two links.
    pub fn golden_ok(&self) -> bool {
        [TacticKind::RMax, TacticKind::RBtw]
            .iter()
            .all(|&t| self.cost_of(t) == Some(Cost::Finite(2)))
    }
}

/// Runs the five compared tactics on the ten-vertex reference scenario.
pub fn fig1(rset_mode: RsetMode) -> Result<Fig1Report> {
    let g0 = worked_example::initial_graph();
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for (tactic, expected) in EXPECTED {
        let run = IpRun::new(g0.clone(), NEWCOMER, tactic).rset_mode(rset_mode);
        let r = run_ip(&run, &mut ScriptedTrace::new(worked_example::trace()))?;
        let edges: Vec<String> = r.edges_built.iter().map(ToString::to_string).collect();
        if r.cost != Cost::Finite(expected) {
            notes.push(format!("{tactic}: cost {} differs from the expected {expected}", r.cost));
        }
        rows.push(Fig1Row {
            tactic,
            cost: r.cost,
            entered_at: r.entered_at,
            edges_built: edges.join(" "),
            expected_cost: expected,
        });
    }
    let min = min_broker_set_bruteforce(&g0, NEWCOMER, 4)?;
    let pair = is_broker_set(&g0, &BrokerSet::new([VertexId(3), VertexId(8)]), NEWCOMER)?;
    Ok(Fig1Report {
        rset_mode,
        rows,
        min_broker_set: min.members.into_iter().collect(),
        pair_3_8_is_broker_set: pair,
        notes,
    })
}
