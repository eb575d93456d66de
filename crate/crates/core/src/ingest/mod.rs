//! Timestamped edge lists: parsing, snapshot sequences, dataset statistics
//! and replay traces.
//!
//! The text format is one event per line, `src dst time [+|-]`, whitespace
//! separated; a missing sign means an addition and `#` starts a comment
//! line. Labels are either numeric ids or arbitrary strings mapped through
//! a label table (`label<TAB>id`).

mod replay;
mod snapshot;
mod stats;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};

use serde::Serialize;

pub use replay::{evenly_spaced_starts, ReplayTrace, ReplayWarnings};
pub use snapshot::{events_from_snapshots, snapshot_count, snapshots, SnapshotIter, SnapshotPolicy};
pub use stats::{dataset_stats, DatasetStats};

use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeOp {
    Add,
    Remove,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeEvent {
    pub time: f64,
    pub a: VertexId,
    pub b: VertexId,
    pub op: EdgeOp,
}

impl EdgeEvent {
    pub fn add(a: u32, b: u32, time: f64) -> Self {
        Self {
            time,
            a: VertexId(a),
            b: VertexId(b),
            op: EdgeOp::Add,
        }
    }

    pub fn remove(a: u32, b: u32, time: f64) -> Self {
        Self {
            op: EdgeOp::Remove,
            ..Self::add(a, b, time)
        }
    }

    fn key(&self) -> (VertexId, VertexId) {
        if self.a < self.b {
            (self.a, self.b)
        } else {
            (self.b, self.a)
        }
    }
}

impl fmt::Display for EdgeEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.time)?;
        if self.op == EdgeOp::Remove {
            f.write_str(" -")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LabelMode {
    /// Labels are non-negative integers used as vertex ids.
    #[default]
    Numeric,
    /// Labels are arbitrary tokens, numbered from 1 in order of first
    /// appearance.
    Table,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    pub labels: LabelMode,
}

/// Label to id mapping for [`LabelMode::Table`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelTable {
    ids: HashMap<String, VertexId>,
    labels: Vec<String>,
}

impl LabelTable {
    fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        self.labels.push(label.to_owned());
        let id = VertexId(self.labels.len() as u32);
        self.ids.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.ids.get(label).copied()
    }

    pub fn label(&self, id: VertexId) -> Option<&str> {
        let i = (id.0 as usize).checked_sub(1)?;
        self.labels.get(i).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        for (i, label) in self.labels.iter().enumerate() {
            writeln!(w, "{label}\t{}", i + 1)?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(r: R) -> Result<Self> {
        let mut table = Self::default();
        let mut by_id = BTreeMap::new();
        for (n, line) in r.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parse = || -> Option<(String, u32)> {
                let (label, id) = line.trim_end_matches('\r').split_once('\t')?;
                Some((label.to_owned(), id.trim().parse().ok()?))
            };
            let (label, id) = parse().ok_or_else(|| Error::Parse {
                line: n + 1,
                message: "expected `label<TAB>id`".into(),
            })?;
            by_id.insert(id, label);
        }
        for (expect, (id, label)) in (1u32..).zip(by_id) {
            if id != expect {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("label ids must run 1..n, missing {expect}"),
                });
            }
            table.intern(&label);
        }
        Ok(table)
    }
}

/// Parse-time anomalies that are skipped rather than fatal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ParseWarnings {
    pub duplicate_adds: usize,
    pub missing_removes: usize,
    pub self_loops: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedEvents {
    /// Events sorted by time, ties kept in file order.
    pub events: Vec<EdgeEvent>,
    pub labels: LabelTable,
    pub warnings: ParseWarnings,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Reads an event stream. Self-loops are dropped; duplicate additions and
/// removals of absent edges are kept but counted.
pub fn parse_events<R: BufRead>(reader: R, opts: ParseOptions) -> Result<ParsedEvents> {
    let mut out = ParsedEvents::default();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = n + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') || text.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(parse_err(lineno, format!("expected 3 or 4 fields, found {}", fields.len())));
        }
        let mut vertex = |s: &str| -> Result<VertexId> {
            match opts.labels {
                LabelMode::Numeric => s
                    .parse::<u32>()
                    .map(VertexId)
                    .map_err(|_| parse_err(lineno, format!("bad vertex id '{s}'"))),
                LabelMode::Table => Ok(out.labels.intern(s)),
            }
        };
        let (a, b) = (vertex(fields[0])?, vertex(fields[1])?);
        let time: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad time '{}'", fields[2])))?;
        if !time.is_finite() || time < 0.0 {
            return Err(parse_err(lineno, format!("time must be finite and non-negative, got {time}")));
        }
        let op = match fields.get(3) {
            None | Some(&"+") => EdgeOp::Add,
            Some(&"-") => EdgeOp::Remove,
            Some(other) => return Err(parse_err(lineno, format!("bad op '{other}', expected + or -"))),
        };
        if a == b {
            out.warnings.self_loops += 1;
            continue;
        }
        out.events.push(EdgeEvent { time, a, b, op });
    }
    out.events.sort_by(|x, y| x.time.total_cmp(&y.time));
    let mut present = HashSet::new();
    for e in &out.events {
        match e.op {
            EdgeOp::Add if !present.insert(e.key()) => out.warnings.duplicate_adds += 1,
            EdgeOp::Remove if !present.remove(&e.key()) => out.warnings.missing_removes += 1,
            _ => {}
        }
    }
    Ok(out)
}

pub fn parse_str(text: &str) -> Result<Vec<EdgeEvent>> {
    Ok(parse_events(text.as_bytes(), ParseOptions::default())?.events)
}

pub fn write_events<W: Write>(mut w: W, events: &[EdgeEvent]) -> Result<()> {
    for e in events {
        writeln!(w, "{e}")?;
    }
    Ok(())
}
