//! Undirected simple graphs over opaque integer vertex ids, plus the static
//! metrics used everywhere else: distances, eccentricity and center,
//! betweenness, clustering, k-cores and the core/periphery coefficient.

mod betweenness;
mod center;
mod clustering;
mod compose;
mod core_periphery;
mod distance;
mod kcore;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use betweenness::{betweenness, betweenness_indexed};
pub use center::{center_profile, CenterProfile, Eccentricities};
pub use clustering::{clustering_coefficient, local_clustering};
pub use compose::{attach_star, graph_oplus, Star};
pub use core_periphery::{
    closeness_indexed, core_closeness_ratio, cp_coefficient, double_edge_swap, CpCoefficient,
};
pub use distance::{bfs_distances, Bfs, Distance, UNREACHED};
pub use kcore::{core_numbers_indexed, k_core_decomposition};

/// Opaque vertex label. Ordering is total and is what every tie-break uses.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Undirected simple graph.
///
/// Vertices are stored densely: every id maps to a stable index in
/// `0..vertex_count()`, assigned in insertion order. Adjacency lists hold
/// indices and are kept sorted. Vertices are never removed from a graph in
/// place; edges are.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, u32>,
    adj: Vec<Vec<u32>>,
    edges: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list. Endpoints are added as vertices.
    pub fn from_edges<I, A>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, A)>,
        A: Into<VertexId>,
    {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(a.into(), b.into())?;
        }
        Ok(g)
    }

    /// A cycle over ids `0..n`.
    pub fn cycle(n: u32) -> Self {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(VertexId(v));
        }
        if n >= 3 {
            for v in 0..n {
                g.add_edge(VertexId(v), VertexId((v + 1) % n))
                    .expect("cycle edges are not loops");
            }
        } else if n == 2 {
            g.add_edge(VertexId(0), VertexId(1)).unwrap();
        }
        g
    }

    /// Complete graph over ids `0..n`.
    pub fn complete(n: u32) -> Self {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(VertexId(v));
        }
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
        g
    }

    /// Adds `id` if absent and returns its index.
    pub fn add_vertex(&mut self, id: VertexId) -> usize {
        if let Some(&i) = self.index.get(&id) {
            return i as usize;
        }
        let i = self.ids.len();
        self.ids.push(id);
        self.index.insert(id, i as u32);
        self.adj.push(Vec::new());
        i
    }

    /// Inserts edge `ab`, adding missing endpoints. Returns `false` if the
    /// edge was already present.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<bool> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        let ia = self.add_vertex(a);
        let ib = self.add_vertex(b);
        Ok(self.add_edge_indexed(ia, ib))
    }

    pub(crate) fn add_edge_indexed(&mut self, ia: usize, ib: usize) -> bool {
        debug_assert_ne!(ia, ib);
        match self.adj[ia].binary_search(&(ib as u32)) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[ia].insert(pos, ib as u32);
                let pos_b = self.adj[ib].binary_search(&(ia as u32)).unwrap_err();
                self.adj[ib].insert(pos_b, ia as u32);
                self.edges += 1;
                true
            }
        }
    }

    /// Removes edge `ab`. Returns `false` if it was not present.
    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(ia), Some(ib)) => self.remove_edge_indexed(ia, ib),
            _ => false,
        }
    }

    pub(crate) fn remove_edge_indexed(&mut self, ia: usize, ib: usize) -> bool {
        match self.adj[ia].binary_search(&(ib as u32)) {
            Ok(pos) => {
                self.adj[ia].remove(pos);
                let pos_b = self.adj[ib].binary_search(&(ia as u32)).unwrap();
                self.adj[ib].remove(pos_b);
                self.edges -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(ia), Some(ib)) => self.has_edge_indexed(ia, ib),
            _ => false,
        }
    }

    pub fn has_edge_indexed(&self, ia: usize, ib: usize) -> bool {
        self.adj[ia].binary_search(&(ib as u32)).is_ok()
    }

    pub fn degree(&self, id: VertexId) -> Option<usize> {
        self.index_of(id).map(|i| self.adj[i].len())
    }

    pub fn degree_indexed(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Neighbors of `id`; empty when `id` is absent.
    pub fn neighbors(&self, id: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let slice: &[u32] = match self.index_of(id) {
            Some(i) => &self.adj[i],
            None => &[],
        };
        slice.iter().map(move |&j| self.ids[j as usize])
    }

    pub fn neighbor_indices(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Vertex ids in index order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ids.iter().copied()
    }

    pub fn sorted_vertices(&self) -> Vec<VertexId> {
        let mut v = self.ids.clone();
        v.sort_unstable();
        v
    }

    /// Each edge once, as `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(i, nbrs)| {
            nbrs.iter().filter_map(move |&j| {
                let (a, b) = (self.ids[i], self.ids[j as usize]);
                (a < b).then_some((a, b))
            })
        })
    }

    pub fn sorted_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut e: Vec<_> = self.edges().collect();
        e.sort_unstable();
        e
    }

    pub fn max_id(&self) -> Option<VertexId> {
        self.ids.iter().copied().max()
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.index.get(&id).map(|&i| i as usize)
    }

    pub(crate) fn require(&self, id: VertexId) -> Result<usize> {
        self.index_of(id).ok_or(Error::VertexNotFound(id))
    }

    pub fn id_at(&self, i: usize) -> VertexId {
        self.ids[i]
    }

    pub fn degrees(&self) -> BTreeMap<VertexId, usize> {
        self.ids
            .iter()
            .zip(&self.adj)
            .map(|(&id, nbrs)| (id, nbrs.len()))
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connected component label per vertex index; labels are dense from 0.
    pub fn component_labels(&self) -> (Vec<u32>, usize) {
        let n = self.vertex_count();
        let mut label = vec![u32::MAX; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if label[s] != u32::MAX {
                continue;
            }
            label[s] = count as u32;
            stack.push(s as u32);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v as usize] {
                    if label[w as usize] == u32::MAX {
                        label[w as usize] = count as u32;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.component_labels().1 == 1
    }

    /// Subgraph induced by the vertices for which `keep` holds. Vertex order
    /// follows this graph's index order.
    pub fn induced_subgraph(&self, mut keep: impl FnMut(VertexId) -> bool) -> Graph {
        let mut g = Graph::new();
        let mut map = vec![u32::MAX; self.vertex_count()];
        for (i, &id) in self.ids.iter().enumerate() {
            if keep(id) {
                map[i] = g.add_vertex(id) as u32;
            }
        }
        for (i, nbrs) in self.adj.iter().enumerate() {
            if map[i] == u32::MAX {
                continue;
            }
            for &j in nbrs {
                let mj = map[j as usize];
                if (j as usize) > i && mj != u32::MAX {
                    g.add_edge_indexed(map[i] as usize, mj as usize);
                }
            }
        }
        g
    }

    /// Largest connected component; ties go to the component holding the
    /// smallest vertex id.
    pub fn largest_component(&self) -> Graph {
        let (label, count) = self.component_labels();
        if count <= 1 {
            return self.clone();
        }
        let mut size = vec![0usize; count];
        let mut min_id = vec![VertexId(u32::MAX); count];
        for (i, &l) in label.iter().enumerate() {
            size[l as usize] += 1;
            min_id[l as usize] = min_id[l as usize].min(self.ids[i]);
        }
        let best = (0..count)
            .max_by(|&a, &b| size[a].cmp(&size[b]).then(min_id[b].cmp(&min_id[a])))
            .unwrap() as u32;
        let keep: BTreeSet<VertexId> = label
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == best)
            .map(|(i, _)| self.ids[i])
            .collect();
        self.induced_subgraph(|v| keep.contains(&v))
    }

    /// Connected component containing `id`.
    pub fn component_of(&self, id: VertexId) -> Result<Graph> {
        let s = self.require(id)?;
        let (label, _) = self.component_labels();
        let target = label[s];
        let keep: BTreeSet<VertexId> = label
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == target)
            .map(|(i, _)| self.ids[i])
            .collect();
        Ok(self.induced_subgraph(|v| keep.contains(&v)))
    }

    /// Copy of the graph with `id` (and its edges) dropped.
    pub fn without_vertex(&self, id: VertexId) -> Graph {
        self.induced_subgraph(|v| v != id)
    }

    /// Structural self-check: symmetric sorted adjacency, no loops, no
    /// duplicates, consistent edge count.
    pub fn check_invariants(&self) -> bool {
        let mut half = 0;
        for (i, nbrs) in self.adj.iter().enumerate() {
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &j in nbrs {
                if j as usize == i || self.adj[j as usize].binary_search(&(i as u32)).is_err() {
                    return false;
                }
            }
            half += nbrs.len();
        }
        half == 2 * self.edges && self.index.len() == self.ids.len()
    }
}

/// Equality of vertex and edge sets, independent of insertion order.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edges != other.edges {
            return false;
        }
        self.ids.iter().enumerate().all(|(i, &id)| match other.index_of(id) {
            Some(j) => {
                self.adj[i].len() == other.adj[j].len()
                    && self.adj[i]
                        .iter()
                        .all(|&k| other.has_edge(id, self.ids[k as usize]))
            }
            None => false,
        })
    }
}

impl Eq for Graph {}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn add_and_remove_edges() {
        let mut g = Graph::new();
        assert!(g.add_edge(v(1), v(2)).unwrap());
        assert!(!g.add_edge(v(2), v(1)).unwrap());
        assert!(matches!(g.add_edge(v(3), v(3)), Err(Error::SelfLoop(_))));
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(v(2), v(1)));
        assert!(g.remove_edge(v(1), v(2)));
        assert!(!g.remove_edge(v(1), v(2)));
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertex_count(), 2);
        assert!(g.check_invariants());
    }

    #[test]
    fn equality_ignores_insertion_order() {
        let a = Graph::from_edges([(1u32, 2u32), (2, 3)]).unwrap();
        let b = Graph::from_edges([(3u32, 2u32), (1, 2)]).unwrap();
        assert_eq!(a, b);
        let c = Graph::from_edges([(1u32, 2u32), (1, 3)]).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn components() {
        let g = Graph::from_edges([(1u32, 2u32), (3, 4), (4, 5)]).unwrap();
        assert!(!g.is_connected());
        let big = g.largest_component();
        assert_eq!(big.sorted_vertices(), vec![v(3), v(4), v(5)]);
        assert_eq!(g.component_of(v(2)).unwrap().vertex_count(), 2);
        assert_eq!(g.without_vertex(v(4)).edge_count(), 1);
    }

    #[test]
    fn cycle_and_complete() {
        let c = Graph::cycle(10);
        assert_eq!(c.edge_count(), 10);
        assert!(c.vertices().all(|x| c.degree(x) == Some(2)));
        assert_eq!(Graph::complete(5).edge_count(), 10);
    }
}
