//! Shared fixtures for the criterion benches.

use brokerage_core::generators::{build_initial, Model, ModelParams};
use brokerage_core::Graph;

/// A connected model network of `n` vertices with average degree about 6.
pub fn fixture(model: Model, n: usize, seed: u64) -> Graph {
    build_initial(&ModelParams::new(model, 6).size(n).seed(seed)).expect("fixture parameters are valid")
}
