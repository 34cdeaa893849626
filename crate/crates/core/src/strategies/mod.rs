//! The concrete robot behaviours, one state machine per algorithm.

mod baseline;
mod opposite;
mod zigzag;

pub use baseline::OfflineBaseline;
pub use opposite::OppositeDirection;
pub use zigzag::ZigZag;

use crate::analysis;
use crate::engine::{self, Strategy};
use crate::error::{Error, Result};
use crate::model::{validate_scenario, AlgorithmId, EvacuationResult, Scenario};

/// Speed overrides for the opposite-direction algorithms. `None` means the
/// analytic optimum for the scenario's bike speed.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StrategyParams {
    pub u1: Option<f64>,
    pub u2: Option<f64>,
}

impl StrategyParams {
    pub fn optimal() -> Self {
        Self::default()
    }

    pub fn with_u1(mut self, u1: f64) -> Self {
        self.u1 = Some(u1);
        self
    }

    pub fn with_u2(mut self, u2: f64) -> Self {
        self.u2 = Some(u2);
        self
    }

    /// Walking speed of the sender and outbound biking speed of the receiver.
    pub fn resolve(&self, algorithm: AlgorithmId, v: f64) -> Result<(f64, f64)> {
        let (u1, u2) = match algorithm {
            AlgorithmId::Alg1 => {
                let u1 = match self.u1 {
                    Some(u) => u,
                    None => {
                        let opt = analysis::opt_u1(v);
                        if !opt.feasible {
                            return Err(infeasible("u1", opt.value, 0.0, 1.0));
                        }
                        opt.value
                    }
                };
                (u1, self.u2.unwrap_or(v))
            }
            AlgorithmId::Alg2 => {
                let u2 = match self.u2 {
                    Some(u) => u,
                    None => {
                        let opt = analysis::opt_u2(v)?;
                        if !opt.feasible {
                            return Err(infeasible("u2", opt.value, 1.0, v));
                        }
                        opt.value
                    }
                };
                (self.u1.unwrap_or(1.0), u2)
            }
            AlgorithmId::Alg3 | AlgorithmId::OfflineBaseline => return Ok((1.0, v)),
        };
        if !(u1 > 0.0 && u1 <= 1.0) {
            return Err(infeasible("u1", u1, 0.0, 1.0));
        }
        if !(1.0..=v).contains(&u2) {
            return Err(infeasible("u2", u2, 1.0, v));
        }
        Ok((u1, u2))
    }
}

fn infeasible(what: &'static str, value: f64, min: f64, max: f64) -> Error {
    Error::InfeasibleSpeed {
        what,
        value,
        min,
        max,
    }
}

/// Strategy object for the scenario's algorithm.
pub fn build(scenario: &Scenario, params: &StrategyParams) -> Result<Box<dyn Strategy>> {
    validate_scenario(scenario)?;
    let v = scenario.v;
    Ok(match scenario.algorithm {
        AlgorithmId::Alg1 | AlgorithmId::Alg2 => {
            let (u1, u2) = params.resolve(scenario.algorithm, v)?;
            Box::new(OppositeDirection::new(u1, u2, v))
        }
        AlgorithmId::Alg3 => Box::new(ZigZag::new(v)),
        AlgorithmId::OfflineBaseline => Box::new(OfflineBaseline::new(scenario.exit(), v)),
    })
}

/// Validate, build the strategy and run it.
pub fn simulate(scenario: &Scenario, params: &StrategyParams) -> Result<EvacuationResult> {
    let mut strategy = build(scenario, params)?;
    engine::run(scenario, strategy.as_mut())
}
