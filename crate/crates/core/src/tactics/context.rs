use std::borrow::Cow;
use std::cell::OnceCell;
use std::collections::BTreeSet;

use super::RsetMode;
use crate::graph::{betweenness_indexed, Bfs, Distance, Eccentricities, Graph, VertexId, UNREACHED};

/// Everything a tactic may look at: the current network and the newcomer.
///
/// While the newcomer has no links it is not part of the network it is
/// reasoning about, so an isolated newcomer is dropped from the analysed
/// graph. Derived quantities (eccentricities, distances from the newcomer and
/// from its furthest vertex, betweenness) are computed once on demand.
pub struct SelectionContext<'g> {
    view: Cow<'g, Graph>,
    newcomer: VertexId,
    newcomer_idx: Option<usize>,
    rset_mode: RsetMode,
    ecc: OnceCell<Eccentricities>,
    newcomer_dist: OnceCell<Vec<u32>>,
    far: OnceCell<Option<(usize, Vec<u32>)>>,
    btw: OnceCell<Vec<f64>>,
}

impl<'g> SelectionContext<'g> {
    pub fn new(graph: &'g Graph, newcomer: VertexId, rset_mode: RsetMode) -> Self {
        let view = match graph.degree(newcomer) {
            Some(0) => Cow::Owned(graph.without_vertex(newcomer)),
            _ => Cow::Borrowed(graph),
        };
        let newcomer_idx = view.index_of(newcomer);
        Self {
            view,
            newcomer,
            newcomer_idx,
            rset_mode,
            ecc: OnceCell::new(),
            newcomer_dist: OnceCell::new(),
            far: OnceCell::new(),
            btw: OnceCell::new(),
        }
    }

    /// Reuses eccentricities already computed for `graph`. Only valid when
    /// the newcomer is absent from `graph` or has at least one link.
    pub fn with_eccentricities(
        graph: &'g Graph,
        newcomer: VertexId,
        rset_mode: RsetMode,
        ecc: Eccentricities,
    ) -> Self {
        let ctx = Self::new(graph, newcomer, rset_mode);
        if matches!(ctx.view, Cow::Borrowed(_)) && ecc.raw().len() == graph.vertex_count() {
            let _ = ctx.ecc.set(ecc);
        }
        ctx
    }

    /// The analysed graph (the input minus an isolated newcomer).
    pub fn graph(&self) -> &Graph {
        &self.view
    }

    pub fn newcomer(&self) -> VertexId {
        self.newcomer
    }

    pub fn rset_mode(&self) -> RsetMode {
        self.rset_mode
    }

    /// The newcomer has no links yet.
    pub fn is_isolated(&self) -> bool {
        self.newcomer_idx.is_none()
    }

    pub(crate) fn newcomer_index(&self) -> Option<usize> {
        self.newcomer_idx
    }

    pub fn eccentricities(&self) -> &Eccentricities {
        self.ecc.get_or_init(|| Eccentricities::compute(&self.view))
    }

    pub fn radius(&self) -> Distance {
        self.eccentricities().radius()
    }

    pub fn center(&self) -> BTreeSet<VertexId> {
        self.eccentricities()
            .center()
            .iter()
            .map(|&i| self.view.id_at(i as usize))
            .collect()
    }

    pub fn newcomer_in_center(&self) -> bool {
        match self.newcomer_idx {
            Some(u) => self.eccentricities().in_center(u),
            None => false,
        }
    }

    /// BFS distances from the newcomer, or `None` while it is isolated.
    pub(crate) fn newcomer_dist(&self) -> Option<&[u32]> {
        let u = self.newcomer_idx?;
        Some(self.newcomer_dist.get_or_init(|| {
            let mut bfs = Bfs::new();
            bfs.run(&self.view, u);
            bfs.into_dist()
        }))
    }

    /// Index of a vertex furthest from the newcomer (unreachable counts as
    /// furthest, ties to the smallest id) together with its BFS distances.
    pub(crate) fn furthest(&self) -> Option<(usize, &[u32])> {
        self.far
            .get_or_init(|| {
                let u = self.newcomer_idx?;
                let du = self.newcomer_dist()?;
                let x = (0..self.view.vertex_count())
                    .filter(|&i| i != u)
                    .max_by(|&a, &b| {
                        du[a]
                            .cmp(&du[b])
                            .then(self.view.id_at(b).cmp(&self.view.id_at(a)))
                    })?;
                let mut bfs = Bfs::new();
                bfs.run(&self.view, x);
                Some((x, bfs.into_dist()))
            })
            .as_ref()
            .map(|(x, d)| (*x, d.as_slice()))
    }

    /// The furthest vertex from the newcomer, if the newcomer has links.
    pub fn furthest_vertex(&self) -> Option<VertexId> {
        self.furthest().map(|(x, _)| self.view.id_at(x))
    }

    pub(crate) fn betweenness(&self) -> &[f64] {
        self.btw.get_or_init(|| betweenness_indexed(&self.view))
    }

    /// `i` is the newcomer or already one of its neighbors.
    pub(crate) fn is_linked(&self, i: usize) -> bool {
        match self.newcomer_idx {
            Some(u) => i == u || self.view.has_edge_indexed(u, i),
            None => false,
        }
    }

    /// Indices of vertices strictly further from the newcomer than the
    /// radius; every vertex while the newcomer is isolated.
    pub(crate) fn uncovered_indices(&self) -> Vec<usize> {
        let n = self.view.vertex_count();
        let Some(du) = self.newcomer_dist() else {
            return (0..n).collect();
        };
        let r = self.eccentricities().radius().finite();
        let u = self.newcomer_idx.unwrap();
        (0..n)
            .filter(|&i| i != u)
            .filter(|&i| match r {
                Some(r) => du[i] == UNREACHED || du[i] > r,
                None => du[i] == UNREACHED,
            })
            .collect()
    }

    /// Remote-center indices relative to the furthest vertex `x`, excluding
    /// the newcomer and its neighbors; every vertex while it is isolated.
    pub(crate) fn remote_center_indices(&self) -> Vec<usize> {
        let n = self.view.vertex_count();
        let Some((_, dx)) = self.furthest() else {
            return (0..n).collect();
        };
        let r = self.eccentricities().radius().finite().unwrap_or(UNREACHED);
        (0..n)
            .filter(|&i| !self.is_linked(i))
            .filter(|&i| match self.rset_mode {
                RsetMode::Example => dx[i] < r,
                RsetMode::Strict => dx[i] > r,
            })
            .collect()
    }

    pub(crate) fn ids(&self, idx: impl IntoIterator<Item = usize>) -> BTreeSet<VertexId> {
        idx.into_iter().map(|i| self.view.id_at(i)).collect()
    }
}
