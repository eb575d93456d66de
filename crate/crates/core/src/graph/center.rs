use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::distance::{Bfs, Distance, UNREACHED};
use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// Eccentricity of every vertex, with radius, diameter and center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterProfile {
    pub ecc: BTreeMap<VertexId, Distance>,
    pub radius: Distance,
    pub diameter: Distance,
    pub center: BTreeSet<VertexId>,
}

/// Index-aligned eccentricities of a graph.
///
/// On a disconnected graph no component spans the vertex set, so every
/// eccentricity is unreachable and the center is empty.
#[derive(Debug, Clone)]
pub struct Eccentricities {
    ecc: Vec<u32>,
    radius: u32,
    diameter: u32,
    center: Vec<u32>,
    bfs_runs: usize,
}

impl Eccentricities {
    /// Exact eccentricities via bound refinement: each BFS from `v` gives
    /// `max(d, ecc(v) - d) <= ecc(w) <= ecc(v) + d` for every `w` at distance
    /// `d`, and a vertex is settled once its bounds meet. Sources alternate
    /// between the loosest upper and lower bounds. On small-world graphs this
    /// settles everything after a small fraction of the BFS runs a naive
    /// all-sources sweep needs; in the worst case it degrades to that sweep.
    pub fn compute(g: &Graph) -> Self {
        let n = g.vertex_count();
        if n == 0 {
            return Self {
                ecc: Vec::new(),
                radius: UNREACHED,
                diameter: UNREACHED,
                center: Vec::new(),
                bfs_runs: 0,
            };
        }
        let mut bfs = Bfs::new();
        let mut lo = vec![0u32; n];
        let mut hi = vec![UNREACHED; n];
        let mut ecc = vec![UNREACHED; n];
        let mut open: Vec<u32> = (0..n as u32).collect();
        let mut pick_high = true;
        let mut runs = 0;
        while !open.is_empty() {
            let src = open
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    let (a, b) = (a as usize, b as usize);
                    let primary = if pick_high {
                        hi[a].cmp(&hi[b])
                    } else {
                        lo[b].cmp(&lo[a])
                    };
                    primary
                        .then(g.degree_indexed(a).cmp(&g.degree_indexed(b)))
                        .then(b.cmp(&a))
                })
                .unwrap() as usize;
            pick_high = !pick_high;
            let summary = bfs.run(g, src);
            runs += 1;
            if summary.reached < n {
                return Self {
                    ecc: vec![UNREACHED; n],
                    radius: UNREACHED,
                    diameter: UNREACHED,
                    center: Vec::new(),
                    bfs_runs: runs,
                };
            }
            let e = summary.depth;
            let dist = bfs.dist();
            open.retain(|&w| {
                let w = w as usize;
                let d = dist[w];
                lo[w] = lo[w].max(d).max(e - d.min(e));
                hi[w] = hi[w].min(e + d);
                if lo[w] == hi[w] {
                    ecc[w] = lo[w];
                    false
                } else {
                    true
                }
            });
        }
        Self::from_raw(ecc, runs)
    }

    /// Eccentricities from one BFS per vertex.
    pub fn compute_exhaustive(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut bfs = Bfs::new();
        let mut ecc = vec![UNREACHED; n];
        for (s, slot) in ecc.iter_mut().enumerate() {
            let summary = bfs.run(g, s);
            if summary.reached < n {
                return Self::from_raw(vec![UNREACHED; n], s + 1);
            }
            *slot = summary.depth;
        }
        Self::from_raw(ecc, n)
    }

    fn from_raw(ecc: Vec<u32>, bfs_runs: usize) -> Self {
        let radius = ecc.iter().copied().min().unwrap_or(UNREACHED);
        let diameter = ecc.iter().copied().max().unwrap_or(UNREACHED);
        let center = if radius == UNREACHED {
            Vec::new()
        } else {
            (0..ecc.len() as u32)
                .filter(|&i| ecc[i as usize] == radius)
                .collect()
        };
        Self {
            ecc,
            radius,
            diameter,
            center,
            bfs_runs,
        }
    }

    pub fn ecc(&self, i: usize) -> Distance {
        Distance::from_raw(self.ecc[i])
    }

    pub fn raw(&self) -> &[u32] {
        &self.ecc
    }

    pub fn radius(&self) -> Distance {
        Distance::from_raw(self.radius)
    }

    pub fn diameter(&self) -> Distance {
        Distance::from_raw(self.diameter)
    }

    /// Center vertex indices, ascending.
    pub fn center(&self) -> &[u32] {
        &self.center
    }

    pub fn in_center(&self, i: usize) -> bool {
        self.radius != UNREACHED && self.ecc[i] == self.radius
    }

    /// How many BFS runs the computation took.
    pub fn bfs_runs(&self) -> usize {
        self.bfs_runs
    }

    pub fn to_profile(&self, g: &Graph) -> CenterProfile {
        CenterProfile {
            ecc: (0..self.ecc.len())
                .map(|i| (g.id_at(i), self.ecc(i)))
                .collect(),
            radius: self.radius(),
            diameter: self.diameter(),
            center: self.center.iter().map(|&i| g.id_at(i as usize)).collect(),
        }
    }
}

/// Eccentricities, radius, diameter and center of a nonempty graph.
pub fn center_profile(g: &Graph) -> Result<CenterProfile> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(Eccentricities::compute(g).to_profile(g))
}
