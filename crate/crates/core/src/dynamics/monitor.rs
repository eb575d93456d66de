use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bfs, Distance, Eccentricities, Graph, VertexId};

/// How far the center of a snapshot sequence wanders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedCenterReport {
    pub reference: VertexId,
    /// `|C(G_0) ∪ C(G_1) ∪ ...|` over the observed prefix.
    pub union_center_size: usize,
    /// Largest distance from a center vertex to the reference, over all
    /// snapshots.
    pub max_center_dist_to_ref: Distance,
    /// Union size after each prefix.
    pub union_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub step: usize,
    pub size: usize,
    pub graph_diameter: Distance,
    pub center_diameter: Distance,
    pub dist_ref: Distance,
}

fn dist(d: u32) -> Distance {
    Distance::from_raw(d)
}

pub fn bounded_center_report(snapshots: &[Graph], reference: VertexId) -> Result<BoundedCenterReport> {
    let mut union = BTreeSet::new();
    let mut sizes = Vec::with_capacity(snapshots.len());
    let mut worst = Distance::Finite(0);
    let mut bfs = Bfs::new();
    for g in snapshots {
        let r = g.index_of(reference).ok_or(Error::VertexNotFound(reference))?;
        let ecc = Eccentricities::compute(g);
        bfs.run(g, r);
        for &c in ecc.center() {
            let c = c as usize;
            union.insert(g.id_at(c));
            worst = worst.max(dist(bfs.dist()[c]));
        }
        sizes.push(union.len());
    }
    Ok(BoundedCenterReport {
        reference,
        union_center_size: union.len(),
        max_center_dist_to_ref: worst,
        union_sizes: sizes,
    })
}

/// Size, diameter, center diameter and center-to-reference distance of
/// every snapshot. A snapshot missing the reference gets an unreachable
/// `dist_ref`.
pub fn temporal_profile(snapshots: &[Graph], reference: VertexId) -> Vec<ProfileRow> {
    let mut bfs = Bfs::new();
    snapshots
        .iter()
        .enumerate()
        .map(|(step, g)| {
            let ecc = Eccentricities::compute(g);
            let center = ecc.center();
            let mut cdiam = Distance::Finite(0);
            for &c in center {
                bfs.run(g, c as usize);
                for &c2 in center {
                    cdiam = cdiam.max(dist(bfs.dist()[c2 as usize]));
                }
            }
            let dist_ref = match g.index_of(reference) {
                Some(r) => {
                    bfs.run(g, r);
                    center
                        .iter()
                        .map(|&c| dist(bfs.dist()[c as usize]))
                        .max()
                        .unwrap_or(Distance::Finite(0))
                }
                None => Distance::Unreachable,
            };
            ProfileRow {
                step,
                size: g.vertex_count(),
                graph_diameter: ecc.diameter(),
                center_diameter: cdiam,
                dist_ref,
            }
        })
        .collect()
}
