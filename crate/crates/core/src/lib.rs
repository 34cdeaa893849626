//! Exact simulation and closed-form analysis of two robots with a shared bike
//! evacuating an infinite line through an exit at unknown distance, under
//! sender/receiver communication faults.
//!
//! - [`model`]: domain types and the trace invariant checker
//! - [`engine`]: event-driven simulator with closed-form event times
//! - [`strategies`]: the opposite-direction algorithms, the zig-zag algorithm
//!   and the exit-known ride-share baseline
//! - [`analysis`]: evacuation times, optimal speeds, competitive ratios and
//!   the lower bound
//! - [`harness`]: adversarial search, cross-validation and sweeps
//! - [`trace`]: the versioned JSON trace file

// `!(x > y)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod engine;
pub mod error;
pub mod harness;
pub mod model;
pub mod strategies;
pub mod trace;

pub use error::{Error, Result};
pub use model::{AlgorithmId, EvacuationResult, ExitSide, Role, Scenario};
pub use strategies::{simulate, StrategyParams};
