use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{Graph, VertexId};
use crate::error::Result;

/// Sentinel for "not reached" in the index-based BFS buffers.
pub const UNREACHED: u32 = u32::MAX;

/// Hop count, or `Unreachable`, which orders after every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn from_raw(d: u32) -> Self {
        if d == UNREACHED {
            Distance::Unreachable
        } else {
            Distance::Finite(d)
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.cmp(b),
            (Distance::Finite(_), Distance::Unreachable) => Ordering::Less,
            (Distance::Unreachable, Distance::Finite(_)) => Ordering::Greater,
            (Distance::Unreachable, Distance::Unreachable) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => d.fmt(f),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Unreachable => s.serialize_none(),
        }
    }
}

/// Reusable breadth-first search over vertex indices.
#[derive(Debug, Default, Clone)]
pub struct Bfs {
    dist: Vec<u32>,
    queue: Vec<u32>,
}

/// What a single BFS run saw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfsSummary {
    /// Largest finite distance from the source.
    pub depth: u32,
    /// Number of vertices reached, source included.
    pub reached: usize,
}

impl Bfs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn run(&mut self, g: &Graph, src: usize) -> BfsSummary {
        let n = g.vertex_count();
        self.dist.clear();
        self.dist.resize(n, UNREACHED);
        self.queue.clear();
        self.dist[src] = 0;
        self.queue.push(src as u32);
        let mut head = 0;
        let mut depth = 0;
        while head < self.queue.len() {
            let v = self.queue[head] as usize;
            head += 1;
            let dv = self.dist[v];
            depth = dv;
            for &w in g.neighbor_indices(v) {
                let w = w as usize;
                if self.dist[w] == UNREACHED {
                    self.dist[w] = dv + 1;
                    self.queue.push(w as u32);
                }
            }
        }
        BfsSummary {
            depth,
            reached: self.queue.len(),
        }
    }

    /// Distances from the last source, indexed like the graph.
    pub fn dist(&self) -> &[u32] {
        &self.dist
    }

    /// Vertices of the last run in visiting (non-decreasing distance) order.
    pub fn order(&self) -> &[u32] {
        &self.queue
    }

    pub fn into_dist(self) -> Vec<u32> {
        self.dist
    }
}

/// Unweighted shortest-path distances from `src` to every vertex.
pub fn bfs_distances(g: &Graph, src: VertexId) -> Result<BTreeMap<VertexId, Distance>> {
    let s = g.require(src)?;
    let mut bfs = Bfs::new();
    bfs.run(g, s);
    Ok(bfs
        .dist()
        .iter()
        .enumerate()
        .map(|(i, &d)| (g.id_at(i), Distance::from_raw(d)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::worked_example;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn unreachable_orders_last() {
        assert!(Distance::Finite(u32::MAX - 1) < Distance::Unreachable);
        assert!(Distance::Finite(2) < Distance::Finite(3));
        assert_eq!(Distance::Unreachable.max(Distance::Finite(9)), Distance::Unreachable);
    }

    #[test]
    fn path_distances() {
        let g = Graph::from_edges([(1u32, 2u32), (2, 3)]).unwrap();
        let d = bfs_distances(&g, v(1)).unwrap();
        assert_eq!(d[&v(1)], Distance::Finite(0));
        assert_eq!(d[&v(2)], Distance::Finite(1));
        assert_eq!(d[&v(3)], Distance::Finite(2));
    }

    #[test]
    fn disjoint_edges_are_unreachable() {
        let g = Graph::from_edges([(1u32, 2u32), (3, 4)]).unwrap();
        let d = bfs_distances(&g, v(1)).unwrap();
        assert_eq!(d[&v(3)], Distance::Unreachable);
    }

    #[test]
    fn worked_example_distances() {
        let g = worked_example::initial_graph();
        let d = bfs_distances(&g, v(7)).unwrap();
        assert_eq!(d[&v(9)], Distance::Finite(5));
        assert_eq!(d[&v(3)], Distance::Finite(2));
        assert_eq!(d[&v(5)], Distance::Finite(1));
    }

    #[test]
    fn unknown_source() {
        let g = Graph::cycle(3);
        assert!(matches!(
            bfs_distances(&g, v(42)),
            Err(Error::VertexNotFound(VertexId(42)))
        ));
    }
}
