use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// A hub joined to every leaf: the newcomer's link set as a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub hub: VertexId,
    pub leaves: BTreeSet<VertexId>,
}

impl Star {
    pub fn new(hub: VertexId, leaves: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let leaves: BTreeSet<_> = leaves.into_iter().collect();
        if leaves.contains(&hub) {
            return Err(Error::SelfLoop(hub));
        }
        Ok(Self { hub, leaves })
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new();
        g.add_vertex(self.hub);
        for &leaf in &self.leaves {
            g.add_edge(self.hub, leaf).expect("hub is not a leaf");
        }
        g
    }
}

/// Union of vertex and edge sets.
pub fn graph_oplus(g: &Graph, h: &Graph) -> Graph {
    let mut out = g.clone();
    for v in h.vertices() {
        out.add_vertex(v);
    }
    for (a, b) in h.edges() {
        out.add_edge(a, b).expect("edges of a simple graph are not loops");
    }
    out
}

/// `g` with the newcomer hub linked to every leaf. Leaves must already be in
/// `g`.
pub fn attach_star(g: &Graph, star: &Star) -> Result<Graph> {
    if let Some(&missing) = star.leaves.iter().find(|&&l| !g.contains(l)) {
        return Err(Error::VertexNotFound(missing));
    }
    Ok(graph_oplus(g, &star.to_graph()))
}
