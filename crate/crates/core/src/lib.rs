//! Knot diagrams, finite-type invariants, C_k-moves and band descriptions.

pub mod bands;
pub mod diagram;
pub mod experiments;
pub mod error;
pub mod invariants;
pub mod moves;

pub use error::{Error, Result};
