use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::snapshot::SnapshotIter;
use super::{EdgeEvent, EdgeOp, SnapshotPolicy};
use crate::dynamics::{EvolutionTrace, Expansion};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Events a replay could not pass to the integration process as-is.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ReplayWarnings {
    /// Removals, which the additive process ignores.
    pub removals_ignored: usize,
    /// Additions of edges that already exist.
    pub duplicates: usize,
    /// Additions between two vertices unknown to the current network; they
    /// wait until one endpoint shows up.
    pub deferred: usize,
    /// Deferred events still waiting when the stream ran out.
    pub dropped: usize,
}

/// Replays an event stream as an evolution trace. The initial network is
/// the largest component of the cumulative graph after `start_at`
/// timestamps; each later timestamp consumes the next `interval` stream
/// events, so no expansion adds more than `interval` edges.
#[derive(Debug, Clone)]
pub struct ReplayTrace {
    initial: Graph,
    rest: VecDeque<EdgeEvent>,
    pending: Vec<EdgeEvent>,
    interval: usize,
    newcomer: VertexId,
    warnings: ReplayWarnings,
}

impl ReplayTrace {
    pub fn new(events: &[EdgeEvent], policy: SnapshotPolicy, start_at: usize, interval: usize) -> Result<Self> {
        if interval == 0 {
            return Err(Error::InvalidParameter("interval must be at least 1".into()));
        }
        if start_at == 0 {
            return Err(Error::InvalidParameter("start_at must be at least 1".into()));
        }
        let mut snaps = SnapshotIter::new(events, policy)?;
        let graph = snaps.nth(start_at - 1).ok_or_else(|| {
            Error::InvalidParameter(format!("start_at {start_at} is beyond the end of the stream"))
        })?;
        let initial = graph.largest_component();
        let top = events.iter().map(|e| e.a.max(e.b).0).max().unwrap_or(0);
        Ok(Self {
            initial,
            rest: events[snaps.consumed()..].iter().copied().collect(),
            pending: Vec::new(),
            interval,
            newcomer: VertexId(top + 1),
            warnings: ReplayWarnings::default(),
        })
    }

    pub fn initial_graph(&self) -> &Graph {
        &self.initial
    }

    /// An id that never occurs in the stream.
    pub fn newcomer(&self) -> VertexId {
        self.newcomer
    }

    pub fn remaining_events(&self) -> usize {
        self.rest.len()
    }

    pub fn warnings(&self) -> ReplayWarnings {
        self.warnings
    }
}

struct Bundle<'g> {
    g: &'g Graph,
    f: Expansion,
}

impl Bundle<'_> {
    fn knows(&self, v: VertexId) -> bool {
        self.g.contains(v) || self.f.new_vertices.contains(&v)
    }

    fn has(&self, a: VertexId, b: VertexId) -> bool {
        let e = if a < b { (a, b) } else { (b, a) };
        self.g.has_edge(a, b) || self.f.new_edges.contains(&e)
    }

    fn push(&mut self, a: VertexId, b: VertexId) {
        for v in [a, b] {
            if !self.knows(v) {
                self.f.new_vertices.insert(v);
            }
        }
        self.f.add_edge(a, b);
    }
}

impl EvolutionTrace for ReplayTrace {
    fn next_expansion(&mut self, g: &Graph, _: VertexId, _: &[VertexId]) -> Result<Option<Expansion>> {
        if self.rest.is_empty() && self.pending.is_empty() {
            return Ok(None);
        }
        let mut b = Bundle { g, f: Expansion::new() };
        let mut budget = self.interval;

        // deferred events whose endpoint has appeared go first
        let mut waiting = Vec::new();
        for e in std::mem::take(&mut self.pending) {
            if budget > 0 && (b.knows(e.a) || b.knows(e.b)) {
                if b.has(e.a, e.b) {
                    self.warnings.duplicates += 1;
                } else {
                    b.push(e.a, e.b);
                    budget -= 1;
                }
            } else {
                waiting.push(e);
            }
        }
        self.pending = waiting;

        while budget > 0 {
            let Some(e) = self.rest.pop_front() else { break };
            budget -= 1;
            if e.op == EdgeOp::Remove {
                self.warnings.removals_ignored += 1;
            } else if b.has(e.a, e.b) {
                self.warnings.duplicates += 1;
            } else if b.knows(e.a) || b.knows(e.b) {
                b.push(e.a, e.b);
            } else {
                self.warnings.deferred += 1;
                self.pending.push(e);
            }
        }

        if self.rest.is_empty() && b.f.is_empty() {
            // nothing left can ever attach
            self.warnings.dropped += self.pending.len();
            self.pending.clear();
            return Ok(None);
        }
        Ok(Some(b.f))
    }
}

/// `count` start indices spread evenly over `1..total` (snapshot counts),
/// deduplicated.
pub fn evenly_spaced_starts(total: usize, count: usize) -> Vec<usize> {
    if total < 2 || count == 0 {
        return Vec::new();
    }
    let last = total - 1;
    let gaps = count.saturating_sub(1).max(1);
    let starts: BTreeSet<usize> = (0..count).map(|i| 1 + i * (last - 1) / gaps).collect();
    starts.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{run_ip, IpRun};
    use crate::ingest::parse_str;
    use crate::TacticKind;

    fn drain(t: &mut ReplayTrace) -> Vec<Expansion> {
        let mut g = t.initial_graph().clone();
        let u = t.newcomer();
        let mut out = Vec::new();
        while let Some(f) = t.next_expansion(&g, u, &[]).unwrap() {
            f.validate(&g, u).unwrap();
            f.apply(&mut g);
            out.push(f);
        }
        out
    }

    #[test]
    fn one_event_per_step() {
        let ev = parse_str("1 2 0\n2 3 1\n3 4 2\n4 5 3").unwrap();
        let mut t = ReplayTrace::new(&ev, SnapshotPolicy::PerEvent, 2, 1).unwrap();
        assert_eq!(t.initial_graph().edge_count(), 2);
        assert_eq!(t.newcomer(), VertexId(6));
        let fs = drain(&mut t);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|f| f.new_edges.len() == 1));
    }

    #[test]
    fn bundles_respect_interval() {
        let text: String = (1..40).map(|i| format!("{i} {} {i}\n", i + 1)).collect();
        let ev = parse_str(&text).unwrap();
        let mut t = ReplayTrace::new(&ev, SnapshotPolicy::PerEvent, 5, 7).unwrap();
        let fs = drain(&mut t);
        assert!(fs.iter().all(|f| f.new_edges.len() <= 7));
        assert_eq!(fs.iter().map(|f| f.new_edges.len()).sum::<usize>(), 34);
    }

    #[test]
    fn skips_and_defers() {
        // 10-11 arrives before anything links it to the network
        let ev = parse_str("1 2 0\n10 11 1\n1 2 2\n2 1 3 -\n2 10 4").unwrap();
        let mut t = ReplayTrace::new(&ev, SnapshotPolicy::PerEvent, 1, 1).unwrap();
        let fs = drain(&mut t);
        let w = t.warnings();
        assert_eq!((w.deferred, w.duplicates, w.removals_ignored, w.dropped), (1, 1, 1, 0));
        let all: BTreeSet<_> = fs.iter().flat_map(|f| f.new_edges.iter().copied()).collect();
        assert!(all.contains(&(VertexId(2), VertexId(10))));
        assert!(all.contains(&(VertexId(10), VertexId(11))));
    }

    #[test]
    fn start_beyond_stream() {
        let ev = parse_str("1 2 0\n2 3 1").unwrap();
        assert!(ReplayTrace::new(&ev, SnapshotPolicy::PerEvent, 3, 1).is_err());
        assert!(ReplayTrace::new(&ev, SnapshotPolicy::PerEvent, 1, 0).is_err());
    }

    #[test]
    fn drives_the_engine() {
        let text: String = (1..30).map(|i| format!("{i} {} {i}\n", i + 1)).collect();
        let ev = parse_str(&text).unwrap();
        let mut t = ReplayTrace::new(&ev, SnapshotPolicy::PerEvent, 10, 1).unwrap();
        let run = IpRun::new(t.initial_graph().clone(), t.newcomer(), TacticKind::RMax);
        let r = run_ip(&run, &mut t).unwrap();
        assert!(r.cost.finite().is_some());
    }

    #[test]
    fn spread_starts() {
        assert_eq!(evenly_spaced_starts(11, 3), vec![1, 5, 10]);
        assert_eq!(evenly_spaced_starts(4, 10), vec![1, 2, 3]);
        assert!(evenly_spaced_starts(1, 3).is_empty());
    }
}
