//! Newcomer tactics: rules that pick which vertices to link to next.
//!
//! Every selection is deterministic. Score ties are broken toward the
//! smallest vertex id, and no rule ever returns the newcomer or a vertex it
//! is already linked to.

mod broker;
mod context;

use std::collections::BTreeSet;
use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use broker::{is_broker_set, min_broker_set_bruteforce, BrokerSet};
pub use context::SelectionContext;

use crate::error::Error;
use crate::graph::VertexId;

/// Which side of the radius the remote-center set is taken from, measured
/// from the vertex furthest from the newcomer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RsetMode {
    /// `dist(x, v) < rad`: vertices close to the far side of the network.
    /// Reproduces the reference worked example.
    #[default]
    Example,
    /// `dist(x, v) > rad`, the formula read literally.
    Strict,
}

impl fmt::Display for RsetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RsetMode::Example => "example",
            RsetMode::Strict => "strict",
        })
    }
}

impl FromStr for RsetMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "example" => Ok(RsetMode::Example),
            "strict" => Ok(RsetMode::Strict),
            other => Err(Error::InvalidParameter(format!("unknown rset mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TacticKind {
    /// Max-degree vertex among the uncovered set.
    SMax,
    /// Max-betweenness vertex among the uncovered set.
    SBtw,
    /// Max-degree vertex among the remote-center set.
    RMax,
    /// Max-betweenness vertex among the remote-center set.
    RBtw,
    /// Most useful friends of a least-degree center vertex.
    Muf,
    /// Link to `k` arbitrary non-neighbors every step.
    FloodK(NonZeroU32),
    /// Link to any non-neighbor within distance one of the center.
    CenterAdjacent,
}

impl TacticKind {
    /// The five single-edge tactics compared in the experiments.
    pub const COMPARED: [TacticKind; 5] = [
        TacticKind::SMax,
        TacticKind::SBtw,
        TacticKind::RMax,
        TacticKind::RBtw,
        TacticKind::Muf,
    ];

    pub fn flood(k: u32) -> Result<Self, Error> {
        NonZeroU32::new(k)
            .map(TacticKind::FloodK)
            .ok_or_else(|| Error::InvalidParameter("flood tactic needs k >= 1".into()))
    }

    /// Upper bound on links built per timestamp.
    pub fn max_links(&self) -> usize {
        match self {
            TacticKind::FloodK(k) => k.get() as usize,
            _ => 1,
        }
    }

    /// Applies the tactic. An empty result means no link this timestamp.
    pub fn select(&self, ctx: &SelectionContext<'_>) -> Vec<VertexId> {
        match self {
            TacticKind::SMax | TacticKind::SBtw | TacticKind::RMax | TacticKind::RBtw => {
                select_target(*self, ctx).into_iter().collect()
            }
            TacticKind::Muf => select_muf(ctx).into_iter().collect(),
            TacticKind::FloodK(k) => select_flood(k.get() as usize, ctx).into_iter().collect(),
            TacticKind::CenterAdjacent => select_center_adjacent(ctx).into_iter().collect(),
        }
    }
}

impl fmt::Display for TacticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TacticKind::SMax => f.write_str("smax"),
            TacticKind::SBtw => f.write_str("sbtw"),
            TacticKind::RMax => f.write_str("rmax"),
            TacticKind::RBtw => f.write_str("rbtw"),
            TacticKind::Muf => f.write_str("muf"),
            TacticKind::FloodK(k) => write!(f, "flood:{k}"),
            TacticKind::CenterAdjacent => f.write_str("center-adjacent"),
        }
    }
}

impl FromStr for TacticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "smax" => TacticKind::SMax,
            "sbtw" => TacticKind::SBtw,
            "rmax" => TacticKind::RMax,
            "rbtw" => TacticKind::RBtw,
            "muf" => TacticKind::Muf,
            "center-adjacent" => TacticKind::CenterAdjacent,
            other => match other.strip_prefix("flood:") {
                Some(k) => TacticKind::flood(k.parse().map_err(|_| {
                    Error::InvalidParameter(format!("bad flood size in `{other}`"))
                })?)?,
                None => return Err(Error::InvalidParameter(format!("unknown tactic `{other}`"))),
            },
        })
    }
}

impl Serialize for TacticKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TacticKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Vertices further from the newcomer than the radius.
pub fn uncovered_set(ctx: &SelectionContext<'_>) -> BTreeSet<VertexId> {
    ctx.ids(ctx.uncovered_indices())
}

/// Remote-center set relative to the vertex furthest from the newcomer.
pub fn remote_center_set(ctx: &SelectionContext<'_>) -> BTreeSet<VertexId> {
    ctx.ids(ctx.remote_center_indices())
}

/// Pool member with the highest score; ties to the smallest id.
fn argmax(ctx: &SelectionContext<'_>, pool: &[usize], score: impl Fn(usize) -> f64) -> Option<usize> {
    let g = ctx.graph();
    let mut best: Option<(f64, usize)> = None;
    for &i in pool {
        let s = score(i);
        best = match best {
            None => Some((s, i)),
            Some((bs, bi)) => {
                let tol = 1e-9 * bs.abs().max(s.abs()).max(1.0);
                if s > bs + tol || ((s - bs).abs() <= tol && g.id_at(i) < g.id_at(bi)) {
                    Some((s, i))
                } else {
                    Some((bs, bi))
                }
            }
        };
    }
    best.map(|(_, i)| i)
}

/// The degree or betweenness maximizer in the uncovered set (S-tactics) or
/// the remote-center set (R-tactics). R-tactics fall back to the uncovered
/// set when their pool is empty. Nothing once the newcomer is central.
///
/// # Panics
///
/// If `kind` is not one of the four pool-based tactics.
pub fn select_target(kind: TacticKind, ctx: &SelectionContext<'_>) -> Option<VertexId> {
    if ctx.newcomer_in_center() {
        return None;
    }
    let mut pool = match kind {
        TacticKind::SMax | TacticKind::SBtw => ctx.uncovered_indices(),
        TacticKind::RMax | TacticKind::RBtw => {
            let r = ctx.remote_center_indices();
            if r.is_empty() {
                ctx.uncovered_indices()
            } else {
                r
            }
        }
        other => panic!("{other} is not a pool-based tactic"),
    };
    pool.retain(|&i| !ctx.is_linked(i));
    let g = ctx.graph();
    let pick = match kind {
        TacticKind::SMax | TacticKind::RMax => argmax(ctx, &pool, |i| g.degree_indexed(i) as f64),
        _ => {
            let btw = ctx.betweenness();
            argmax(ctx, &pool, |i| btw[i])
        }
    };
    pick.map(|i| g.id_at(i))
}

/// Most-useful-friends: take the least-degree center vertex `c`; link to the
/// highest-degree neighbor of `c` that sits at distance `rad - 1` from the
/// vertex furthest from the newcomer. Falls back to any unlinked neighbor of
/// `c` when no such friend remains.
pub fn select_muf(ctx: &SelectionContext<'_>) -> Option<VertexId> {
    if ctx.newcomer_in_center() {
        return None;
    }
    let g = ctx.graph();
    let ecc = ctx.eccentricities();
    let c = ecc
        .center()
        .iter()
        .map(|&i| i as usize)
        .filter(|&i| Some(i) != ctx.newcomer_index())
        .min_by(|&a, &b| {
            g.degree_indexed(a)
                .cmp(&g.degree_indexed(b))
                .then(g.id_at(a).cmp(&g.id_at(b)))
        })?;
    let friends: Vec<usize> = g
        .neighbor_indices(c)
        .iter()
        .map(|&w| w as usize)
        .filter(|&w| !ctx.is_linked(w))
        .collect();
    let by_degree = |i: usize| g.degree_indexed(i) as f64;
    let Some((_, dx)) = ctx.furthest() else {
        return argmax(ctx, &friends, by_degree).map(|i| g.id_at(i));
    };
    let useful: Vec<usize> = match ecc.radius().finite() {
        Some(r) if r >= 1 => friends.iter().copied().filter(|&w| dx[w] == r - 1).collect(),
        _ => Vec::new(),
    };
    argmax(ctx, &useful, by_degree)
        .or_else(|| argmax(ctx, &friends, by_degree))
        .map(|i| g.id_at(i))
}

/// The `k` smallest-id vertices not yet linked to the newcomer.
pub fn select_flood(k: usize, ctx: &SelectionContext<'_>) -> BTreeSet<VertexId> {
    let g = ctx.graph();
    let mut ids: Vec<VertexId> = (0..g.vertex_count())
        .filter(|&i| !ctx.is_linked(i))
        .map(|i| g.id_at(i))
        .filter(|&v| v != ctx.newcomer())
        .collect();
    ids.sort_unstable();
    ids.into_iter().take(k).collect()
}

/// Smallest-id unlinked vertex within distance one of some center vertex.
pub fn select_center_adjacent(ctx: &SelectionContext<'_>) -> Option<VertexId> {
    let g = ctx.graph();
    let mut near = BTreeSet::new();
    for &c in ctx.eccentricities().center() {
        let c = c as usize;
        near.insert(c);
        near.extend(g.neighbor_indices(c).iter().map(|&w| w as usize));
    }
    near.into_iter()
        .filter(|&i| !ctx.is_linked(i) && g.id_at(i) != ctx.newcomer())
        .map(|i| g.id_at(i))
        .min()
}
