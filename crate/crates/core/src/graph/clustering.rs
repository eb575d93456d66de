use std::collections::BTreeMap;

use super::{Graph, VertexId};

/// Local clustering coefficient per vertex index. Degree < 2 gives 0.
fn local_indexed(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut mark = vec![false; n];
    (0..n)
        .map(|v| {
            let nbrs = g.neighbor_indices(v);
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            for &w in nbrs {
                mark[w as usize] = true;
            }
            let mut links = 0usize;
            for &w in nbrs {
                links += g
                    .neighbor_indices(w as usize)
                    .iter()
                    .filter(|&&x| mark[x as usize])
                    .count();
            }
            for &w in nbrs {
                mark[w as usize] = false;
            }
            // each triangle edge counted from both ends
            links as f64 / (k * (k - 1)) as f64
        })
        .collect()
}

pub fn local_clustering(g: &Graph) -> BTreeMap<VertexId, f64> {
    local_indexed(g)
        .into_iter()
        .enumerate()
        .map(|(i, c)| (g.id_at(i), c))
        .collect()
}

/// Average local clustering coefficient.
pub fn clustering_coefficient(g: &Graph) -> f64 {
    if g.is_empty() {
        return 0.0;
    }
    local_indexed(g).iter().sum::<f64>() / g.vertex_count() as f64
}
