//! The ten-vertex network with three single-edge extensions used as the
//! reference scenario for comparing tactics (golden tests, `fig1`).

use crate::dynamics::Expansion;
use crate::graph::{Graph, VertexId};

/// Id used for the newcomer in the reference scenario.
pub const NEWCOMER: VertexId = VertexId(0);

pub const EDGES: [(u32, u32); 11] = [
    (1, 2),
    (1, 3),
    (2, 9),
    (2, 8),
    (2, 10),
    (3, 4),
    (3, 5),
    (3, 6),
    (4, 6),
    (5, 7),
    (8, 10),
];

/// Extensions applied one per timestamp: each attaches a new vertex.
pub const EXTENSIONS: [(u32, u32); 3] = [(9, 11), (6, 12), (8, 13)];

pub fn initial_graph() -> Graph {
    Graph::from_edges(EDGES).expect("fixture edges are valid")
}

pub fn trace() -> Vec<Expansion> {
    EXTENSIONS
        .iter()
        .map(|&(old, new)| Expansion::pendant(VertexId(old), VertexId(new)))
        .collect()
}
