#![allow(dead_code)]

use std::collections::BTreeMap;

use brokerage_core::rng;
use brokerage_core::{Graph, VertexId};
use itertools::Itertools;
use rand::Rng;

pub const INF: u32 = u32::MAX;

/// Random connected graph on ids `1..=n`: a random tree plus extra edges
/// with probability `p`.
pub fn random_connected(n: u32, p: f64, seed: u64) -> Graph {
    let mut rng = rng::stream(seed, 77);
    let mut g = Graph::new();
    g.add_vertex(VertexId(1));
    for v in 2..=n {
        let parent = rng.gen_range(1..v);
        g.add_edge(VertexId(parent), VertexId(v)).unwrap();
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
    }
    g
}

/// Random graph on ids `1..=n` that may be disconnected.
pub fn random_gnp(n: u32, p: f64, seed: u64) -> Graph {
    let mut rng = rng::stream(seed, 78);
    let mut g = Graph::new();
    for v in 1..=n {
        g.add_vertex(VertexId(v));
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
    }
    g
}

/// All-pairs distances by Floyd–Warshall over sorted ids.
pub fn floyd_warshall(g: &Graph) -> (Vec<VertexId>, Vec<Vec<u32>>) {
    let ids = g.sorted_vertices();
    let n = ids.len();
    let pos = |v: VertexId| ids.binary_search(&v).unwrap();
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (a, b) in g.edges() {
        d[pos(a)][pos(b)] = 1;
        d[pos(b)][pos(a)] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    (ids, d)
}

/// Eccentricities from a distance matrix; `INF` everywhere if disconnected.
pub fn eccentricities(d: &[Vec<u32>]) -> Vec<u32> {
    d.iter().map(|row| *row.iter().max().unwrap_or(&0)).collect()
}

/// Whether `u`, joined to `members`, is a center vertex (oracle version).
pub fn central_after_joining(g: &Graph, u: VertexId, members: &[VertexId]) -> bool {
    let mut h = g.clone();
    h.add_vertex(u);
    for &m in members {
        h.add_edge(u, m).unwrap();
    }
    let (ids, d) = floyd_warshall(&h);
    let ecc = eccentricities(&d);
    let rad = *ecc.iter().min().unwrap();
    let ui = ids.iter().position(|&x| x == u).unwrap();
    rad != INF && ecc[ui] == rad
}

/// Betweenness by listing every simple path between every pair and keeping
/// the shortest ones.
pub fn betweenness_by_paths(g: &Graph) -> BTreeMap<VertexId, f64> {
    fn walk(g: &Graph, path: &mut Vec<VertexId>, t: VertexId, out: &mut Vec<Vec<VertexId>>) {
        let last = *path.last().unwrap();
        if last == t {
            out.push(path.clone());
            return;
        }
        let next: Vec<VertexId> = g.neighbors(last).collect();
        for w in next {
            if !path.contains(&w) {
                path.push(w);
                walk(g, path, t, out);
                path.pop();
            }
        }
    }
    let mut score: BTreeMap<VertexId, f64> = g.vertices().map(|v| (v, 0.0)).collect();
    for (s, t) in g.sorted_vertices().into_iter().tuple_combinations() {
        let mut paths = Vec::new();
        walk(g, &mut vec![s], t, &mut paths);
        let Some(best) = paths.iter().map(Vec::len).min() else {
            continue;
        };
        let shortest: Vec<_> = paths.into_iter().filter(|p| p.len() == best).collect();
        let total = shortest.len() as f64;
        for p in &shortest {
            for v in &p[1..p.len() - 1] {
                *score.get_mut(v).unwrap() += 1.0 / total;
            }
        }
    }
    score
}

/// Smallest k such that some k-subset puts the newcomer in the center.
pub fn min_broker_size(g: &Graph, u: VertexId) -> usize {
    let vs = g.sorted_vertices();
    (0..=vs.len())
        .find(|&k| vs.iter().copied().combinations(k).any(|s| central_after_joining(g, u, &s)))
        .unwrap()
}
