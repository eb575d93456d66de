use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Eccentricities, Graph, VertexId};

/// Bound on the number of subsets the exhaustive search will visit.
const MAX_SUBSETS: u128 = 1 << 24;

/// Vertices whose joint linking puts the newcomer in the center.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BrokerSet {
    pub members: BTreeSet<VertexId>,
}

impl BrokerSet {
    pub fn new(members: impl IntoIterator<Item = VertexId>) -> Self {
        Self {
            members: members.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn joined_is_central(g: &Graph, members: &[VertexId], u: VertexId) -> bool {
    let mut h = g.clone();
    let ui = h.add_vertex(u);
    for &m in members {
        h.add_edge(u, m).expect("newcomer is not a member");
    }
    Eccentricities::compute(&h).in_center(ui)
}

/// Whether linking the newcomer `u` to every member makes its eccentricity
/// equal to the radius of the joined graph (which must be connected).
pub fn is_broker_set(g: &Graph, b: &BrokerSet, u: VertexId) -> Result<bool> {
    if g.contains(u) {
        return Err(Error::InvalidMove(format!("newcomer {u} already in graph")));
    }
    if let Some(&m) = b.members.iter().find(|&&m| !g.contains(m)) {
        return Err(Error::VertexNotFound(m));
    }
    let members: Vec<_> = b.members.iter().copied().collect();
    Ok(joined_is_central(g, &members, u))
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// A smallest broker set, found by trying subsets in order of size and then
/// lexicographically by id. Only sizes up to `size_cap` are tried.
pub fn min_broker_set_bruteforce(g: &Graph, u: VertexId, size_cap: usize) -> Result<BrokerSet> {
    if g.contains(u) {
        return Err(Error::InvalidMove(format!("newcomer {u} already in graph")));
    }
    let n = g.vertex_count();
    let cap = size_cap.min(n);
    let total: u128 = (0..=cap).map(|s| binomial(n as u128, s as u128)).sum();
    if total > MAX_SUBSETS {
        return Err(Error::SearchTooLarge(total));
    }
    let vertices = g.sorted_vertices();
    for size in 0..=cap {
        for subset in vertices.iter().copied().combinations(size) {
            if joined_is_central(g, &subset, u) {
                return Ok(BrokerSet::new(subset));
            }
        }
    }
    Err(Error::NoBrokerSetWithinCap(size_cap))
}
