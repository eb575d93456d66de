use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{EdgeEvent, EdgeOp};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// How an event stream is cut into timestamps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SnapshotPolicy {
    /// One snapshot after every event.
    PerEvent,
    /// One snapshot per period of the given width. Period `j` ends at
    /// `(j + 1) * width`, inclusive; empty periods between the first and last
    /// event still produce (unchanged) snapshots.
    FixedPeriod(f64),
    /// One snapshot after every `n` events, plus a trailing partial one.
    EveryN(usize),
}

impl SnapshotPolicy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SnapshotPolicy::FixedPeriod(w) if !(w > 0.0 && w.is_finite()) => {
                Err(Error::InvalidParameter(format!("period width must be positive, got {w}")))
            }
            SnapshotPolicy::EveryN(0) => Err(Error::InvalidParameter("EveryN needs n >= 1".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SnapshotPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SnapshotPolicy::PerEvent => f.write_str("per-event"),
            SnapshotPolicy::FixedPeriod(w) => write!(f, "period:{w}"),
            SnapshotPolicy::EveryN(n) => write!(f, "every:{n}"),
        }
    }
}

impl FromStr for SnapshotPolicy {
    type Err = Error;

    /// `per-event`, `period:<width>` or `every:<n>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad snapshot policy `{s}`"));
        let policy = match s.split_once(':') {
            None if s == "per-event" => SnapshotPolicy::PerEvent,
            Some(("period", w)) => SnapshotPolicy::FixedPeriod(w.parse().map_err(|_| bad())?),
            Some(("every", n)) => SnapshotPolicy::EveryN(n.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        policy.validate()?;
        Ok(policy)
    }
}

fn period_of(t: f64, w: f64) -> u64 {
    ((t / w).ceil() as u64).saturating_sub(1)
}

/// Lazily materialized snapshot sequence. Each item is the cumulative graph
/// at the end of one timestamp; vertices stay once seen, even if all their
/// edges are removed.
#[derive(Debug, Clone)]
pub struct SnapshotIter<'a> {
    events: &'a [EdgeEvent],
    policy: SnapshotPolicy,
    pos: usize,
    period: u64,
    graph: Graph,
}

impl<'a> SnapshotIter<'a> {
    pub fn new(events: &'a [EdgeEvent], policy: SnapshotPolicy) -> Result<Self> {
        policy.validate()?;
        let period = match (policy, events.first()) {
            (SnapshotPolicy::FixedPeriod(w), Some(e)) => period_of(e.time, w),
            _ => 0,
        };
        Ok(Self {
            events,
            policy,
            pos: 0,
            period,
            graph: Graph::new(),
        })
    }

    /// Number of events folded into the snapshots produced so far.
    pub fn consumed(&self) -> usize {
        self.pos
    }

    fn apply(&mut self, e: &EdgeEvent) {
        match e.op {
            EdgeOp::Add => {
                // loops are rejected at parse time
                let _ = self.graph.add_edge(e.a, e.b);
            }
            EdgeOp::Remove => {
                self.graph.remove_edge(e.a, e.b);
            }
        }
    }
}

impl Iterator for SnapshotIter<'_> {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.pos >= self.events.len() {
            return None;
        }
        let take = match self.policy {
            SnapshotPolicy::PerEvent => 1,
            SnapshotPolicy::EveryN(n) => n.min(self.events.len() - self.pos),
            SnapshotPolicy::FixedPeriod(w) => {
                let end = self.events[self.pos..]
                    .iter()
                    .take_while(|e| period_of(e.time, w) <= self.period)
                    .count();
                self.period += 1;
                end
            }
        };
        for i in self.pos..self.pos + take {
            let e = self.events[i];
            self.apply(&e);
        }
        self.pos += take;
        Some(self.graph.clone())
    }
}

/// All snapshots of an event stream.
pub fn snapshots(events: &[EdgeEvent], policy: SnapshotPolicy) -> Result<Vec<Graph>> {
    Ok(SnapshotIter::new(events, policy)?.collect())
}

/// Number of timestamps the policy produces, without building graphs.
pub fn snapshot_count(events: &[EdgeEvent], policy: SnapshotPolicy) -> Result<usize> {
    policy.validate()?;
    let n = events.len();
    Ok(match policy {
        _ if n == 0 => 0,
        SnapshotPolicy::PerEvent => n,
        SnapshotPolicy::EveryN(k) => n.div_ceil(k),
        SnapshotPolicy::FixedPeriod(w) => {
            (period_of(events[n - 1].time, w) - period_of(events[0].time, w) + 1) as usize
        }
    })
}

/// Edge differences between consecutive snapshots, snapshot `i` stamped
/// with time `i + 1`. Replaying the result under `period:1` rebuilds the
/// edge sets of the sequence.
pub fn events_from_snapshots(snaps: &[Graph]) -> Vec<EdgeEvent> {
    let mut out = Vec::new();
    let mut prev: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for (i, g) in snaps.iter().enumerate() {
        let cur: BTreeSet<_> = g.sorted_edges().into_iter().collect();
        let t = (i + 1) as f64;
        for &(a, b) in prev.difference(&cur) {
            out.push(EdgeEvent { time: t, a, b, op: EdgeOp::Remove });
        }
        for &(a, b) in cur.difference(&prev) {
            out.push(EdgeEvent { time: t, a, b, op: EdgeOp::Add });
        }
        prev = cur;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_str;

    fn edge_counts(snaps: &[Graph]) -> Vec<usize> {
        snaps.iter().map(Graph::edge_count).collect()
    }

    #[test]
    fn per_event() {
        let ev = parse_str("1 2 1\n2 3 2\n3 4 3").unwrap();
        let s = snapshots(&ev, SnapshotPolicy::PerEvent).unwrap();
        assert_eq!(edge_counts(&s), vec![1, 2, 3]);
    }

    #[test]
    fn fixed_period() {
        let ev = parse_str("1 2 1\n2 3 2\n3 4 3\n4 5 11").unwrap();
        let s = snapshots(&ev, SnapshotPolicy::FixedPeriod(10.0)).unwrap();
        assert_eq!(edge_counts(&s), vec![3, 4]);
        assert_eq!(snapshot_count(&ev, SnapshotPolicy::FixedPeriod(10.0)).unwrap(), 2);
        // boundary is inclusive and empty periods still count
        let ev = parse_str("1 2 10\n2 3 35").unwrap();
        let s = snapshots(&ev, SnapshotPolicy::FixedPeriod(10.0)).unwrap();
        assert_eq!(edge_counts(&s), vec![1, 1, 1, 2]);
        assert_eq!(snapshot_count(&ev, SnapshotPolicy::FixedPeriod(10.0)).unwrap(), 4);
    }

    #[test]
    fn every_n_keeps_remainder() {
        let ev = parse_str("1 2 1\n2 3 2\n3 4 3\n4 5 4\n5 6 5").unwrap();
        let s = snapshots(&ev, SnapshotPolicy::EveryN(2)).unwrap();
        assert_eq!(edge_counts(&s), vec![2, 4, 5]);
        assert_eq!(snapshot_count(&ev, SnapshotPolicy::EveryN(2)).unwrap(), 3);
    }

    #[test]
    fn removal() {
        let ev = parse_str("1 2 1\n1 2 2 -").unwrap();
        let s = snapshots(&ev, SnapshotPolicy::PerEvent).unwrap();
        assert_eq!(edge_counts(&s), vec![1, 0]);
        assert_eq!(s[1].vertex_count(), 2);
    }

    #[test]
    fn policy_strings() {
        for p in [SnapshotPolicy::PerEvent, SnapshotPolicy::FixedPeriod(2.5), SnapshotPolicy::EveryN(7)] {
            assert_eq!(p.to_string().parse::<SnapshotPolicy>().unwrap(), p);
        }
        assert!("every:0".parse::<SnapshotPolicy>().is_err());
        assert!("weekly".parse::<SnapshotPolicy>().is_err());
    }

    #[test]
    fn bad_policies() {
        assert!(snapshots(&[], SnapshotPolicy::EveryN(0)).is_err());
        assert!(snapshots(&[], SnapshotPolicy::FixedPeriod(0.0)).is_err());
        assert!(snapshots(&[], SnapshotPolicy::PerEvent).unwrap().is_empty());
    }

    #[test]
    fn export_diffs() {
        let ev = parse_str("1 2 1\n2 3 1.5\n1 2 2 -").unwrap();
        let s = snapshots(&ev, SnapshotPolicy::PerEvent).unwrap();
        let back = events_from_snapshots(&s);
        let again = snapshots(&back, SnapshotPolicy::FixedPeriod(1.0)).unwrap();
        let edges = |v: &[Graph]| v.iter().map(Graph::sorted_edges).collect::<Vec<_>>();
        assert_eq!(edges(&again), edges(&s));
        assert_eq!(
            back,
            vec![EdgeEvent::add(1, 2, 1.0), EdgeEvent::add(2, 3, 2.0), EdgeEvent::remove(1, 2, 3.0)]
        );
    }
}
