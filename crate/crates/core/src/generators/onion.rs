use rand::seq::SliceRandom;
use rand::Rng;

use super::{Builder, DegreeDistribution};
use crate::dynamics::{Expansion, IdAllocator};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Consecutive invalid pairings (loops, duplicates) before a forced join.
const STALL: usize = 100;
/// Consecutive pairing attempts of any kind before a forced join.
const MAX_ATTEMPTS: usize = 20_000;
const MAX_FORCED: usize = 1_000;
/// Attempts at adding one vertex without disconnecting the network.
const CONNECT_RETRIES: usize = 50;

/// Chance of joining studs in layers `s` and `t`: `1 / (1 + 3|s - t|)`.
pub fn onion_join_probability(s: usize, t: usize) -> f64 {
    1.0 / (1.0 + 3.0 * s.abs_diff(t) as f64)
}

#[derive(Clone, Copy)]
struct Stud {
    owner: usize,
    layer: usize,
}

fn layer_of(levels: &[usize], k: usize) -> usize {
    levels.partition_point(|&x| x < k)
}

/// Joins `a` and `b` by splitting a random edge `cd` into `ac` and `bd`.
fn force_join<R: Rng>(b: &mut Builder, a: usize, c_: usize, rng: &mut R) -> bool {
    let edges = b.severable();
    for _ in 0..100 {
        let Some(&(x, y)) = edges.choose(rng) else {
            return false;
        };
        let (c, d) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
        let ok = ![a, c_].contains(&c)
            && ![a, c_].contains(&d)
            && !b.h.has_edge_indexed(a, c)
            && !b.h.has_edge_indexed(c_, d);
        if ok {
            b.sever(c, d);
            b.link(a, c);
            b.link(c_, d);
            return true;
        }
    }
    false
}

/// Drains the stud pool into edges.
fn pair<R: Rng>(b: &mut Builder, mut pool: Vec<Stud>, rng: &mut R) -> Result<()> {
    let mut forced = 0;
    let (mut invalid, mut attempts) = (0, 0);
    while pool.len() >= 2 {
        let i = rng.gen_range(0..pool.len());
        let mut j = rng.gen_range(0..pool.len() - 1);
        if j >= i {
            j += 1;
        }
        let (s, t) = (pool[i], pool[j]);
        attempts += 1;
        let valid = s.owner != t.owner && !b.h.has_edge_indexed(s.owner, t.owner);
        if !valid {
            invalid += 1;
        }
        let joined = if attempts >= MAX_ATTEMPTS || (!valid && invalid >= STALL) {
            forced += 1;
            if forced > MAX_FORCED {
                return Err(Error::OnionStalled(forced));
            }
            if valid {
                b.link(s.owner, t.owner)
            } else {
                force_join(b, s.owner, t.owner, rng)
            }
        } else {
            valid && rng.gen_bool(onion_join_probability(s.layer, t.layer)) && b.link(s.owner, t.owner)
        };
        if joined {
            pool.swap_remove(i.max(j));
            pool.swap_remove(i.min(j));
            invalid = 0;
            attempts = 0;
        }
    }
    Ok(())
}

fn add_one<R: Rng>(b: &mut Builder, id: VertexId, q: &DegreeDistribution, rng: &mut R) -> Result<()> {
    let severable = b.severable();
    let n_existing = b.candidates().len();
    let k = (q.sample(rng) as usize).min(n_existing / 2).min(severable.len()).max(1);

    let mut levels: Vec<usize> = b.candidates().iter().map(|&i| b.h.degree_indexed(i)).collect();
    levels.push(k);
    levels.sort_unstable();
    levels.dedup();
    let layer = |b: &Builder, i: usize| layer_of(&levels, b.h.degree_indexed(i));

    let mut pool = Vec::with_capacity(3 * k + 1);
    let mut cut: Vec<(usize, usize)> = severable.choose_multiple(rng, k).copied().collect();
    cut.sort_unstable();
    for &(x, y) in &cut {
        pool.push(Stud { owner: x, layer: layer(b, x) });
        pool.push(Stud { owner: y, layer: layer(b, y) });
    }
    if k % 2 == 1 {
        // keep the pool even with one extra stud on an existing vertex
        let z = b.pick(rng)?;
        pool.push(Stud { owner: z, layer: layer(b, z) });
    }
    for &(x, y) in &cut {
        b.sever(x, y);
    }
    let v = b.add_vertex(id);
    let v_layer = layer_of(&levels, k);
    pool.extend(std::iter::repeat_n(Stud { owner: v, layer: v_layer }, k));
    pair(b, pool, rng)
}

/// Dynamized onion growth: each of the `ell` arriving vertices draws a
/// degree `k` from `q`, `k` existing edges are severed, and the resulting
/// studs (plus `k` of the new vertex) are re-paired preferring studs in
/// nearby degree layers. Additions that would disconnect the network are
/// redrawn.
pub fn onion_step<R: Rng>(
    g: &Graph,
    newcomer: Option<VertexId>,
    q: &DegreeDistribution,
    ell: usize,
    rng: &mut R,
    ids: &mut IdAllocator,
) -> Result<Expansion> {
    let mut b = Builder::new(g, newcomer);
    ids.sync(g, newcomer.unwrap_or(VertexId(0)));
    let connected = g.is_connected();
    for _ in 0..ell {
        let id = ids.fresh();
        let mut attempt = 0;
        loop {
            let mut trial = b.clone();
            add_one(&mut trial, id, q, rng)?;
            attempt += 1;
            if !connected || trial.h.is_connected() || attempt >= CONNECT_RETRIES {
                if attempt >= CONNECT_RETRIES && connected && !trial.h.is_connected() {
                    log::warn!("onion step left the network disconnected");
                }
                b = trial;
                break;
            }
        }
    }
    Ok(b.finish())
}
