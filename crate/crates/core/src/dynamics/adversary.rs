use rand::seq::SliceRandom;

use super::{EvolutionTrace, Expansion, IdAllocator};
use crate::error::{Error, Result};
use crate::graph::{Bfs, Eccentricities, Graph, VertexId, UNREACHED};
use crate::rng::{self, SimRng};

/// A path of `ell` fresh vertices hanging off the vertex of `h` furthest from
/// `u`. `h` is the network as it will look once the newcomer's move is
/// applied. While `u` has no links the anchor is the smallest-id vertex of
/// maximum eccentricity.
pub fn adversary_expansion(
    h: &Graph,
    u: VertexId,
    ell: usize,
    ids: &mut IdAllocator,
) -> Result<Expansion> {
    if ell == 0 {
        return Err(Error::InvalidParameter("path length must be at least 1".into()));
    }
    let anchor = match h.index_of(u).filter(|&i| h.degree_indexed(i) > 0) {
        Some(ui) => {
            let mut bfs = Bfs::new();
            bfs.run(h, ui);
            let d = bfs.dist();
            (0..h.vertex_count())
                .filter(|&i| i != ui)
                .max_by(|&a, &b| d[a].cmp(&d[b]).then(h.id_at(b).cmp(&h.id_at(a))))
                .map(|i| h.id_at(i))
        }
        None => {
            let g = h.without_vertex(u);
            let ecc = Eccentricities::compute(&g);
            (0..g.vertex_count())
                .max_by(|&a, &b| ecc.ecc(a).cmp(&ecc.ecc(b)).then(g.id_at(b).cmp(&g.id_at(a))))
                .map(|i| g.id_at(i))
        }
    }
    .ok_or(Error::EmptyGraph)?;
    ids.sync(h, u);
    let path: Vec<VertexId> = (0..ell).map(|_| ids.fresh()).collect();
    Ok(Expansion::path(anchor, &path))
}

/// The environment that keeps a single-edge newcomer out of the center by
/// growing a path of length `ell >= 2` at its furthest point every
/// timestamp. It reads the newcomer's simultaneous move.
#[derive(Debug, Clone)]
pub struct AdversaryTrace {
    ell: usize,
    ids: IdAllocator,
}

impl AdversaryTrace {
    pub fn new(ell: usize) -> Self {
        Self {
            ell,
            ids: IdAllocator::new(),
        }
    }
}

impl EvolutionTrace for AdversaryTrace {
    fn next_expansion(
        &mut self,
        g: &Graph,
        newcomer: VertexId,
        newcomer_move: &[VertexId],
    ) -> Result<Option<Expansion>> {
        let mut h = g.clone();
        if !newcomer_move.is_empty() {
            h.add_vertex(newcomer);
            for &v in newcomer_move {
                h.add_edge(newcomer, v)?;
            }
        }
        adversary_expansion(&h, newcomer, self.ell, &mut self.ids).map(Some)
    }
}

/// Random growth that keeps the center near a reference vertex.
///
/// Each timestamp adds `ell` pendant vertices. Anchors are drawn from the
/// vertices strictly closer to the reference than its initial eccentricity
/// whose eccentricity is above the radius. When no vertex qualifies the
/// timestamp passes with an empty expansion. A
/// pendant placed this way sits within the initial eccentricity of the
/// reference, so the reference's eccentricity never grows and every center
/// vertex stays within that distance of it.
#[derive(Debug, Clone)]
pub struct BoundedCenterTrace {
    reference: VertexId,
    bound: Option<u32>,
    ell: usize,
    steps_left: usize,
    rng: SimRng,
    ids: IdAllocator,
}

impl BoundedCenterTrace {
    pub fn new(reference: VertexId, ell: usize, steps: usize, seed: u64) -> Self {
        Self {
            reference,
            bound: None,
            ell,
            steps_left: steps,
            rng: rng::stream(seed, 0xbc),
            ids: IdAllocator::new(),
        }
    }
}

impl EvolutionTrace for BoundedCenterTrace {
    fn next_expansion(&mut self, g: &Graph, newcomer: VertexId, _: &[VertexId]) -> Result<Option<Expansion>> {
        if self.steps_left == 0 {
            return Ok(None);
        }
        self.steps_left -= 1;
        let r = g.require(self.reference)?;
        let mut bfs = Bfs::new();
        let depth = bfs.run(g, r).depth;
        let bound = *self.bound.get_or_insert(depth.max(1));
        let ecc = Eccentricities::compute(g);
        let rad = ecc.radius().finite().unwrap_or(UNREACHED);
        let ui = g.index_of(newcomer);
        let pool: Vec<usize> = (0..g.vertex_count())
            .filter(|&i| Some(i) != ui && bfs.dist()[i] < bound)
            .filter(|&i| ecc.ecc(i).finite().is_some_and(|e| e > rad))
            .collect();
        self.ids.sync(g, newcomer);
        let mut f = Expansion::new();
        for _ in 0..self.ell {
            let Some(&a) = pool.choose(&mut self.rng) else {
                break;
            };
            let x = self.ids.fresh();
            f.new_vertices.insert(x);
            f.add_edge(g.id_at(a), x);
        }
        Ok(Some(f))
    }
}
