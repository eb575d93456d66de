use std::collections::BTreeMap;

use super::{Graph, VertexId};

/// Core number per vertex index, by bucket-ordered peeling.
pub fn core_numbers_indexed(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree_indexed(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = first position of degree-d vertices in `vert`
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    let mut next = bin.clone();
    for v in 0..n {
        pos[v] = next[deg[v]];
        vert[pos[v]] = v;
        next[deg[v]] += 1;
    }

    for i in 0..n {
        let v = vert[i];
        for &w in g.neighbor_indices(v) {
            let w = w as usize;
            if deg[w] > deg[v] {
                let dw = deg[w];
                let pw = pos[w];
                let start = bin[dw];
                let u = vert[start];
                if u != w {
                    vert.swap(start, pw);
                    pos[u] = pw;
                    pos[w] = start;
                }
                bin[dw] += 1;
                deg[w] -= 1;
            }
        }
    }
    deg
}

/// Core number of every vertex.
pub fn k_core_decomposition(g: &Graph) -> BTreeMap<VertexId, usize> {
    core_numbers_indexed(g)
        .into_iter()
        .enumerate()
        .map(|(i, c)| (g.id_at(i), c))
        .collect()
}
