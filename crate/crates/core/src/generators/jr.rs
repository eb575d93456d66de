use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Builder;
use crate::dynamics::{Expansion, IdAllocator};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Jackson–Rogers growth. Each of the `ell` arriving vertices links to a
/// uniform anchor, then to each of `m` uniform non-neighbors with
/// probability `p`, then to each of `m` uniform vertices at distance two with
/// probability `p`. A vertex sampled in the first round is not sampled
/// again.
pub fn jr_step<R: Rng>(
    g: &Graph,
    newcomer: Option<VertexId>,
    p: f64,
    m: usize,
    ell: usize,
    rng: &mut R,
    ids: &mut IdAllocator,
) -> Result<Expansion> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    let mut b = Builder::new(g, newcomer);
    ids.sync(g, newcomer.unwrap_or(VertexId(0)));
    for _ in 0..ell {
        let pool = b.candidates();
        let anchor = *pool.choose(rng).ok_or(Error::EmptyGraph)?;
        let x = b.add_vertex(ids.fresh());
        b.link(x, anchor);

        let others: Vec<usize> = pool.iter().copied().filter(|&i| i != anchor).collect();
        let s1: Vec<usize> = others.choose_multiple(rng, m).copied().collect();
        for &t in &s1 {
            if rng.gen_bool(p) {
                b.link(x, t);
            }
        }

        let mut second = BTreeSet::new();
        for &w in b.h.neighbor_indices(x) {
            second.extend(b.h.neighbor_indices(w as usize).iter().map(|&z| z as usize));
        }
        let s2_pool: Vec<usize> = second
            .into_iter()
            .filter(|&z| z != x && b.allowed(z) && !b.h.has_edge_indexed(x, z) && !s1.contains(&z))
            .collect();
        let s2: Vec<usize> = s2_pool.choose_multiple(rng, m).copied().collect();
        for t in s2 {
            if rng.gen_bool(p) {
                b.link(x, t);
            }
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn certain_links_on_triangle() {
        let tri = Graph::complete(3);
        let f = jr_step(&tri, None, 1.0, 1, 1, &mut rng::stream(4, 0), &mut IdAllocator::new()).unwrap();
        assert_eq!(f.new_vertices.len(), 1);
        assert_eq!(f.new_edges.len(), 3);
    }

    #[test]
    fn zero_probability_keeps_only_anchors() {
        let g = Graph::cycle(12);
        let mut r = rng::stream(4, 0);
        for _ in 0..20 {
            let f = jr_step(&g, None, 0.0, 3, 4, &mut r, &mut IdAllocator::new()).unwrap();
            assert_eq!(f.new_edges.len(), 4);
        }
    }

    #[test]
    fn bounded_links_per_vertex() {
        let g = Graph::cycle(30);
        let f = jr_step(&g, None, 1.0, 3, 1, &mut rng::stream(5, 0), &mut IdAllocator::new()).unwrap();
        assert!(f.new_edges.len() <= 7 && f.new_edges.len() >= 4);
        assert!(jr_step(&g, None, 2.0, 3, 1, &mut rng::stream(5, 0), &mut IdAllocator::new()).is_err());
    }
}
