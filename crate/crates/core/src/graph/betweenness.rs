use std::collections::BTreeMap;

use super::distance::UNREACHED;
use super::{Graph, VertexId};

/// Unnormalized shortest-path betweenness, indexed like the graph.
///
/// Single-source dependency accumulation from every vertex. Each unordered
/// pair is seen from both endpoints, hence the final halving.
pub fn betweenness_indexed(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut score = vec![0.0f64; n];
    let mut dist = vec![UNREACHED; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);

    for s in 0..n {
        for &v in &order {
            let v = v as usize;
            dist[v] = UNREACHED;
            sigma[v] = 0.0;
            delta[v] = 0.0;
        }
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push(s as u32);
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            let dv = dist[v];
            for &w in g.neighbor_indices(v) {
                let w = w as usize;
                if dist[w] == UNREACHED {
                    dist[w] = dv + 1;
                    order.push(w as u32);
                }
                if dist[w] == dv + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        for &w in order.iter().rev() {
            let w = w as usize;
            let dw = dist[w];
            let coeff = (1.0 + delta[w]) / sigma[w];
            for &v in g.neighbor_indices(w) {
                let v = v as usize;
                if dist[v] != UNREACHED && dist[v] + 1 == dw {
                    delta[v] += sigma[v] * coeff;
                }
            }
            if w != s {
                score[w] += delta[w];
            }
        }
    }
    for x in &mut score {
        *x /= 2.0;
    }
    score
}

/// Unnormalized shortest-path betweenness of every vertex.
pub fn betweenness(g: &Graph) -> BTreeMap<VertexId, f64> {
    betweenness_indexed(g)
        .into_iter()
        .enumerate()
        .map(|(i, b)| (g.id_at(i), b))
        .collect()
}
