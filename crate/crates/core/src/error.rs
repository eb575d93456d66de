use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex not found: {0}")]
    VertexNotFound(VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid newcomer move: {0}")]
    InvalidMove(String),
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error("move of {size} links exceeds the per-step bound {bound}")]
    Confinement { size: usize, bound: usize },
    #[error("no broker set within cap {0}")]
    NoBrokerSetWithinCap(usize),
    #[error("search space too large: {0} subsets")]
    SearchTooLarge(u128),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("onion pairing stalled after {0} forced resolutions")]
    OnionStalled(usize),
    #[error("null model failed: every rewired sample was disconnected")]
    NullModelFailed,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
