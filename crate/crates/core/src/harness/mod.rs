//! Verification and experiment layer on top of the engine and the closed forms.

mod grid;
mod ride_share;
mod sweep;
mod validate;
pub mod verify;
mod worst_case;

pub use grid::{dyadic_augment, linear_grid, log_grid};
pub use ride_share::{ride_share_bruteforce, ride_share_time, RideShareBest};
pub use sweep::{alg3_bound_rows, sweep, sweep_csv, GridScale, SweepSpec, CSV_HEADER};
pub use validate::{cross_validate, CrossReport};
pub use worst_case::{
    dyadic_interval_maxima, formula_cr, worst_case_cr, worst_case_cr_with, IntervalMax,
    WorstCaseReport,
};

use crate::analysis::bike_share_time;
use crate::error::Result;
use crate::model::EvacuationResult;

/// Tolerance for checks against exact closed forms (relative) and bounds (one-sided).
pub const VALIDATION_TOL: f64 = 1e-9;

/// Evacuation time over the exit-known optimum.
pub fn competitive_ratio(r: &EvacuationResult) -> Result<f64> {
    Ok(r.evacuation_time / bike_share_time(r.scenario.d, r.scenario.v)?)
}
