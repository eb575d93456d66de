use rand::Rng;

use super::Builder;
use crate::dynamics::{Expansion, IdAllocator};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Preferential attachment: `ell` new vertices, each linked to `d / 2`
/// distinct vertices drawn with probability proportional to degree.
pub fn ba_step<R: Rng>(
    g: &Graph,
    newcomer: Option<VertexId>,
    d: u32,
    ell: usize,
    rng: &mut R,
    ids: &mut IdAllocator,
) -> Result<Expansion> {
    let m = (d as usize / 2).max(1);
    let mut b = Builder::new(g, newcomer);
    ids.sync(g, newcomer.unwrap_or(VertexId(0)));
    // one entry per edge endpoint
    let mut ends: Vec<usize> = Vec::with_capacity(2 * g.edge_count() + 2 * ell * m);
    let mut positive = 0;
    for i in b.candidates() {
        let k = b.h.degree_indexed(i);
        positive += usize::from(k > 0);
        ends.extend(std::iter::repeat_n(i, k));
    }
    if ends.is_empty() {
        return Err(Error::InvalidParameter("preferential attachment needs an edge".into()));
    }
    let mut chosen = Vec::with_capacity(m);
    for _ in 0..ell {
        let x = b.add_vertex(ids.fresh());
        chosen.clear();
        if positive <= m {
            chosen.extend(b.candidates().into_iter().filter(|&i| i != x && b.h.degree_indexed(i) > 0));
        } else {
            while chosen.len() < m {
                let t = ends[rng.gen_range(0..ends.len())];
                if !chosen.contains(&t) {
                    chosen.push(t);
                }
            }
        }
        for &t in &chosen {
            b.link(x, t);
            ends.push(t);
            ends.push(x);
        }
        positive += 1;
    }
    Ok(b.finish())
}
