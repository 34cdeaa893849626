use thiserror::Error;

use crate::model::{Role, Scenario};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bike speed must exceed 1, got {0}")]
    SpeedOutOfRange(f64),

    #[error("exit distance must be positive, got {0}")]
    NonPositiveDistance(f64),

    #[error("the doubling strategy requires d >= 1, got {0}")]
    Alg3DistanceTooSmall(f64),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("walker speed {u1} is not below bike speed {v}: the biker can never catch up")]
    DegenerateChase { u1: f64, v: f64 },

    #[error("quadratic for v = {0} has no positive root")]
    NoPositiveRoot(f64),

    #[error("{what} = {value} outside the feasible range [{min}, {max}]")]
    InfeasibleSpeed {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("f - g does not change sign on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("communication violation at t = {time}: {reason}")]
    CommViolation { time: f64, reason: String },

    #[error("{role} commanded speed {speed} above its cap {cap} at t = {time}")]
    SpeedViolation {
        role: Role,
        speed: f64,
        cap: f64,
        time: f64,
    },

    #[error("bike rule violated at t = {time}: {reason}")]
    BikeViolation { time: f64, reason: String },

    #[error("simulation stalled at t = {time}: {reason}")]
    NoProgress { time: f64, reason: String },

    #[error("strategy invariant broken at t = {time}: {reason}")]
    StrategyInvariant { time: f64, reason: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("validation failed for {scenario:?}: {detail} (deviation {deviation:e})")]
    ValidationFailure {
        scenario: Box<Scenario>,
        deviation: f64,
        detail: String,
    },
}

impl Error {
    /// True for errors caused by bad inputs rather than by a failing run.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::SpeedOutOfRange(_)
                | Error::NonPositiveDistance(_)
                | Error::Alg3DistanceTooSmall(_)
                | Error::Domain(_)
                | Error::InfeasibleSpeed { .. }
                | Error::NoSignChange { .. }
        )
    }
}
