//! Integration processes: the network and the newcomer move simultaneously,
//! `G_{i+1} = G_i ⊕ (F_i ⊕ (S_i ⊗ u))`, where `F_i` comes from an evolution
//! trace and `S_i` from the newcomer's tactic applied to `G_i`.

mod adversary;
mod engine;
mod monitor;

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

pub use adversary::{adversary_expansion, AdversaryTrace, BoundedCenterTrace};
pub use engine::{ip_step, run_ip, trace_ip, Cost, IpResult, IpRun, StepMeta, DEFAULT_HORIZON};
pub use monitor::{bounded_center_report, temporal_profile, BoundedCenterReport, ProfileRow};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// One environment move: new vertices and edges attached to the current
/// network.
///
/// `removed_edges` is only used by rewiring models (the onion generator),
/// which sever and re-pair existing edges within a timestamp. Additive
/// traces leave it empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub new_vertices: BTreeSet<VertexId>,
    pub new_edges: BTreeSet<(VertexId, VertexId)>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub removed_edges: BTreeSet<(VertexId, VertexId)>,
}

impl Expansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// A single new vertex `new` hanging off `anchor`.
    pub fn pendant(anchor: VertexId, new: VertexId) -> Self {
        let mut f = Self::new();
        f.new_vertices.insert(new);
        f.add_edge(anchor, new);
        f
    }

    /// A path `anchor, path[0], path[1], ...` of new vertices.
    pub fn path(anchor: VertexId, path: &[VertexId]) -> Self {
        let mut f = Self::new();
        let mut prev = anchor;
        for &x in path {
            f.new_vertices.insert(x);
            f.add_edge(prev, x);
            prev = x;
        }
        f
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) {
        self.new_edges.insert(ordered(a, b));
    }

    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) {
        self.removed_edges.insert(ordered(a, b));
    }

    /// Drops edges that are both severed and re-created.
    pub fn normalize(&mut self) {
        let both: Vec<_> = self
            .new_edges
            .intersection(&self.removed_edges)
            .copied()
            .collect();
        for e in both {
            self.new_edges.remove(&e);
            self.removed_edges.remove(&e);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.new_vertices.is_empty() && self.new_edges.is_empty() && self.removed_edges.is_empty()
    }

    pub fn is_additive(&self) -> bool {
        self.removed_edges.is_empty()
    }

    /// Checks that this is an expansion of `g` that leaves `newcomer` alone:
    /// new vertices are fresh, every new edge is absent from `g` and has
    /// known endpoints, every removed edge exists, and each component of
    /// the expansion reaches an existing vertex.
    pub fn validate(&self, g: &Graph, newcomer: VertexId) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidExpansion(m));
        if self.new_vertices.contains(&newcomer) {
            return bad(format!("adds the newcomer {newcomer}"));
        }
        if let Some(v) = self.new_vertices.iter().find(|&&v| g.contains(v)) {
            return bad(format!("vertex {v} already exists"));
        }
        for &(a, b) in self.new_edges.iter().chain(&self.removed_edges) {
            if a == newcomer || b == newcomer {
                return bad(format!("edge {a}-{b} touches the newcomer"));
            }
            if a == b {
                return bad(format!("self-loop on {a}"));
            }
        }
        for &(a, b) in &self.removed_edges {
            if !g.has_edge(a, b) {
                return bad(format!("removed edge {a}-{b} does not exist"));
            }
        }
        for &(a, b) in &self.new_edges {
            for x in [a, b] {
                if !g.contains(x) && !self.new_vertices.contains(&x) {
                    return bad(format!("edge {a}-{b} has unknown endpoint {x}"));
                }
            }
            if g.has_edge(a, b) && !self.removed_edges.contains(&(a, b)) {
                return bad(format!("edge {a}-{b} already exists"));
            }
        }
        // every new vertex must be reachable from an existing one
        let mut adj: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
        for &(a, b) in &self.new_edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut queue: VecDeque<VertexId> =
            adj.keys().copied().filter(|&x| g.contains(x)).collect();
        seen.extend(queue.iter().copied());
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(&x).into_iter().flatten() {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        if let Some(v) = self.new_vertices.iter().find(|v| !seen.contains(v)) {
            return bad(format!("vertex {v} is not attached to the network"));
        }
        Ok(())
    }

    /// Applies the expansion to `g` without validation.
    pub fn apply(&self, g: &mut Graph) {
        for &(a, b) in &self.removed_edges {
            g.remove_edge(a, b);
        }
        for &v in &self.new_vertices {
            g.add_vertex(v);
        }
        for &(a, b) in &self.new_edges {
            g.add_edge(a, b).expect("validated expansions have no loops");
        }
    }
}

/// Hands out vertex ids above everything seen so far.
#[derive(Debug, Clone, Default)]
pub struct IdAllocator {
    next: u32,
}

impl IdAllocator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Moves past every id of `g` and past `newcomer`.
    pub fn sync(&mut self, g: &Graph, newcomer: VertexId) {
        let top = g.max_id().map_or(0, |m| m.0 + 1).max(newcomer.0 + 1);
        self.next = self.next.max(top);
    }

    pub fn fresh(&mut self) -> VertexId {
        let id = VertexId(self.next);
        self.next += 1;
        id
    }
}

/// Source of environment moves for an integration process.
pub trait EvolutionTrace {
    /// The expansion applied to `g` in the next timestamp, or `None` once the
    /// trace is exhausted. `newcomer_move` is the newcomer's simultaneous
    /// link set; only adversarial traces should look at it.
    fn next_expansion(
        &mut self,
        g: &Graph,
        newcomer: VertexId,
        newcomer_move: &[VertexId],
    ) -> Result<Option<Expansion>>;
}

/// A fixed list of expansions.
#[derive(Debug, Clone, Default)]
pub struct ScriptedTrace {
    remaining: VecDeque<Expansion>,
}

impl ScriptedTrace {
    pub fn new(expansions: impl IntoIterator<Item = Expansion>) -> Self {
        Self {
            remaining: expansions.into_iter().collect(),
        }
    }
}

impl EvolutionTrace for ScriptedTrace {
    fn next_expansion(&mut self, _: &Graph, _: VertexId, _: &[VertexId]) -> Result<Option<Expansion>> {
        Ok(self.remaining.pop_front())
    }
}

impl<T: EvolutionTrace + ?Sized> EvolutionTrace for &mut T {
    fn next_expansion(
        &mut self,
        g: &Graph,
        newcomer: VertexId,
        newcomer_move: &[VertexId],
    ) -> Result<Option<Expansion>> {
        (**self).next_expansion(g, newcomer, newcomer_move)
    }
}

impl<T: EvolutionTrace + ?Sized> EvolutionTrace for Box<T> {
    fn next_expansion(
        &mut self,
        g: &Graph,
        newcomer: VertexId,
        newcomer_move: &[VertexId],
    ) -> Result<Option<Expansion>> {
        (**self).next_expansion(g, newcomer, newcomer_move)
    }
}
