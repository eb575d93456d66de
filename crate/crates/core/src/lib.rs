//! Simulation of a newcomer building ties to reach the center of a growing
//! network.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: simple undirected graphs and static metrics (eccentricity,
//!   center, betweenness, clustering, k-cores, core/periphery coefficient).
//! * [`tactics`]: the newcomer's link-selection rules and broker-set checks.
//! * [`dynamics`]: the integration-process engine, adversarial traces and
//!   center-stability monitors.
//! * [`generators`]: dynamic preferential-attachment, Jackson–Rogers,
//!   rich-club and onion models.
//! * [`ingest`]: timestamped edge lists, snapshots, dataset statistics and
//!   replay traces.
//! * [`experiment`]: the experiment drivers behind the command-line tool.

pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod ingest;
pub mod rng;
pub mod tactics;
pub mod worked_example;

pub use error::{Error, Result};
pub use graph::{Distance, Graph, VertexId};
pub use tactics::{RsetMode, TacticKind};
