use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::distance::Bfs;
use super::kcore::core_numbers_indexed;
use super::Graph;
use crate::error::{Error, Result};

const SWAPS_PER_EDGE: usize = 10;
const REDRAWS_PER_SAMPLE: usize = 20;

/// Core/periphery coefficient and the pieces it is made of.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CpCoefficient {
    /// `ratio - null_mean`.
    pub value: f64,
    /// Best k-core closeness ratio of the input graph.
    pub ratio: f64,
    /// Mean ratio over the rewired samples that stayed connected.
    pub null_mean: f64,
    pub null_used: usize,
    /// Samples given up after every redraw came out disconnected.
    pub null_skipped: usize,
}

/// Closeness `(n - 1) / sum of distances` per vertex index. Requires a
/// connected graph.
pub fn closeness_indexed(g: &Graph) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    let mut bfs = Bfs::new();
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        let summary = bfs.run(g, s);
        if summary.reached < n {
            return Err(Error::Disconnected);
        }
        let total: u64 = bfs.dist().iter().map(|&d| d as u64).sum();
        out.push(if total == 0 {
            0.0
        } else {
            (n - 1) as f64 / total as f64
        });
    }
    Ok(out)
}

/// Mean closeness of the k-core that maximizes it, over the mean closeness
/// of all vertices. Always at least 1, since the lowest core is everything.
pub fn core_closeness_ratio(g: &Graph) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let closeness = closeness_indexed(g)?;
    let cores = core_numbers_indexed(g);
    let max_core = cores.iter().copied().max().unwrap_or(0);
    let mut sum = vec![0.0f64; max_core + 1];
    let mut count = vec![0usize; max_core + 1];
    for (c, &k) in closeness.iter().zip(&cores) {
        sum[k] += c;
        count[k] += 1;
    }
    let overall = closeness.iter().sum::<f64>() / closeness.len() as f64;
    if overall == 0.0 {
        return Ok(1.0);
    }
    // suffix sums give every k-core at once
    let (mut s, mut c, mut best) = (0.0, 0usize, f64::MIN);
    for k in (0..=max_core).rev() {
        s += sum[k];
        c += count[k];
        if c > 0 {
            best = best.max(s / c as f64);
        }
    }
    Ok(best / overall)
}

/// Degree-preserving rewiring: `swaps` successful double-edge swaps
/// (`ab, cd -> ad, cb`), each rejected if it would create a loop or a
/// duplicate. Gives up after `100 * swaps` attempts. Returns the number of
/// swaps performed.
pub fn double_edge_swap<R: Rng>(g: &mut Graph, swaps: usize, rng: &mut R) -> usize {
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(a, b)| (g.index_of(a).unwrap(), g.index_of(b).unwrap()))
        .collect();
    if edges.len() < 2 {
        return 0;
    }
    let max_tries = swaps.saturating_mul(100);
    let (mut done, mut tries) = (0, 0);
    while done < swaps && tries < max_tries {
        tries += 1;
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if a == d || c == b || g.has_edge_indexed(a, d) || g.has_edge_indexed(c, b) {
            continue;
        }
        g.remove_edge_indexed(a, b);
        g.remove_edge_indexed(c, d);
        g.add_edge_indexed(a, d);
        g.add_edge_indexed(c, b);
        edges[i] = (a, d);
        edges[j] = (c, b);
        done += 1;
    }
    done
}

/// Core/periphery coefficient: the k-core closeness ratio of `g` minus its
/// mean over `null_samples` degree-preserving rewirings (`10·|E|` swaps
/// each). Rewired samples that come out disconnected are redrawn a bounded
/// number of times, then skipped.
pub fn cp_coefficient(g: &Graph, null_samples: usize, rng_seed: u64) -> Result<CpCoefficient> {
    if null_samples == 0 {
        return Err(Error::InvalidParameter("null_samples must be at least 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let ratio = core_closeness_ratio(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let swaps = SWAPS_PER_EDGE * g.edge_count();
    let (mut total, mut used, mut skipped) = (0.0, 0, 0);
    for _ in 0..null_samples {
        let mut sample = None;
        for _ in 0..REDRAWS_PER_SAMPLE {
            let mut h = g.clone();
            double_edge_swap(&mut h, swaps, &mut rng);
            if h.is_connected() {
                sample = Some(h);
                break;
            }
        }
        match sample {
            Some(h) => {
                total += core_closeness_ratio(&h)?;
                used += 1;
            }
            None => skipped += 1,
        }
    }
    if skipped > 0 {
        warn!("cp coefficient: skipped {skipped} disconnected null samples");
    }
    if used == 0 {
        return Err(Error::NullModelFailed);
    }
    let null_mean = total / used as f64;
    Ok(CpCoefficient {
        value: ratio - null_mean,
        ratio,
        null_mean,
        null_used: used,
        null_skipped: skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_is_flat() {
        let cp = cp_coefficient(&Graph::complete(6), 5, 1).unwrap();
        assert!(cp.value.abs() < 1e-12);
        assert!((cp.ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cycle_is_near_zero() {
        let cp = cp_coefficient(&Graph::cycle(12), 20, 7).unwrap();
        assert!(cp.value.abs() < 0.05, "{cp:?}");
    }

    #[test]
    fn swaps_preserve_degrees() {
        let g = Graph::from_edges([
            (0u32, 1u32), (0, 2), (0, 3), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (1, 5),
        ])
        .unwrap();
        let mut h = g.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        double_edge_swap(&mut h, 50, &mut rng);
        assert_eq!(g.degrees(), h.degrees());
        assert!(h.check_invariants());
    }

    #[test]
    fn rejects_disconnected_and_zero_samples() {
        let g = Graph::from_edges([(1u32, 2u32), (3, 4)]).unwrap();
        assert!(matches!(cp_coefficient(&g, 3, 0), Err(Error::Disconnected)));
        assert!(cp_coefficient(&Graph::cycle(5), 0, 0).is_err());
    }

    #[test]
    fn star_core_ratio() {
        // hub closeness 1, leaves 4/7; core numbers all 1 -> ratio exactly 1
        let g = Graph::from_edges([(0u32, 1u32), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!((core_closeness_ratio(&g).unwrap() - 1.0).abs() < 1e-12);
    }
}
