use std::collections::BTreeMap;

use rand::Rng;

use super::Builder;
use crate::dynamics::{Expansion, IdAllocator};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

const TARGET_RETRIES: usize = 100;

/// Vertex-event probability `2(N+1) / (N d + 2)` for target size `n` and
/// average degree `d`.
pub fn richclub_alpha(n: usize, d: u32) -> f64 {
    2.0 * (n as f64 + 1.0) / (n as f64 * d as f64 + 2.0)
}

fn degree_classes(b: &Builder) -> BTreeMap<usize, usize> {
    let mut classes = BTreeMap::new();
    for i in b.candidates() {
        let k = b.h.degree_indexed(i);
        if k > 0 {
            *classes.entry(k).or_insert(0) += 1;
        }
    }
    classes
}

/// Probability of drawing a target from each degree class, proportional to
/// `k |[k]|`.
pub fn degree_class_probabilities(g: &Graph, newcomer: Option<VertexId>) -> BTreeMap<usize, f64> {
    let classes = degree_classes(&Builder::new(g, newcomer));
    let total: usize = classes.iter().map(|(k, c)| k * c).sum();
    classes
        .into_iter()
        .map(|(k, c)| (k, (k * c) as f64 / total as f64))
        .collect()
}

fn pick_target<R: Rng>(b: &Builder, rng: &mut R) -> Option<usize> {
    let classes = degree_classes(b);
    let total: usize = classes.iter().map(|(k, c)| k * c).sum();
    if total == 0 {
        return None;
    }
    let mut r = rng.gen_range(0..total);
    let (&k, &count) = classes.iter().find(|(k, c)| {
        if r < *k * *c {
            true
        } else {
            r -= *k * *c;
            false
        }
    })?;
    let j = rng.gen_range(0..count);
    b.candidates()
        .into_iter()
        .filter(|&i| b.h.degree_indexed(i) == k)
        .nth(j)
}

/// Rich-club growth. Elementary events repeat until `ell` vertices have
/// arrived: with probability `alpha` a new vertex links to a uniform
/// vertex, otherwise a uniform source links to a target drawn by degree
/// class. A target equal to the source or already adjacent is redrawn, up to
/// a fixed number of times.
pub fn richclub_step<R: Rng>(
    g: &Graph,
    newcomer: Option<VertexId>,
    alpha: f64,
    ell: usize,
    rng: &mut R,
    ids: &mut IdAllocator,
) -> Result<Expansion> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("alpha {alpha} outside (0, 1]")));
    }
    let mut b = Builder::new(g, newcomer);
    ids.sync(g, newcomer.unwrap_or(VertexId(0)));
    let mut added = 0;
    while added < ell {
        if rng.gen_bool(alpha) {
            let anchor = b.pick(rng)?;
            let x = b.add_vertex(ids.fresh());
            b.link(x, anchor);
            added += 1;
        } else {
            let w = b.pick(rng)?;
            for _ in 0..TARGET_RETRIES {
                match pick_target(&b, rng) {
                    Some(z) if z != w && !b.h.has_edge_indexed(w, z) => {
                        b.link(w, z);
                        break;
                    }
                    Some(_) => continue,
                    None => break,
                }
            }
        }
    }
    Ok(b.finish())
}
