use rayon::prelude::*;
use serde::Serialize;

use super::{competitive_ratio, dyadic_augment, VALIDATION_TOL};
use crate::analysis::{bike_share_time, cr_alg3_ub, worst_case_formula};
use crate::error::{Error, Result};
use crate::model::{AlgorithmId, ExitSide, Scenario};
use crate::strategies::{simulate, StrategyParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorstCaseReport {
    pub algorithm: AlgorithmId,
    pub v: f64,
    pub worst_d: f64,
    pub worst_side: ExitSide,
    pub sim_cr: f64,
    pub formula_cr: f64,
    pub gap: f64,
    /// Largest ratio with the exit on each side.
    pub cr_left: f64,
    pub cr_right: f64,
    pub runs: usize,
}

impl WorstCaseReport {
    /// Whether the simulated ratio agrees with the formula: equality for the
    /// exact schemes, one-sided for the zig-zag bound.
    pub fn consistent(&self) -> bool {
        match self.algorithm {
            AlgorithmId::Alg3 => self.sim_cr <= self.formula_cr + VALIDATION_TOL,
            _ => self.gap.abs() <= VALIDATION_TOL * self.formula_cr,
        }
    }
}

/// Closed-form ratio for `algorithm` at bike speed `v` with the given speeds.
pub fn formula_cr(algorithm: AlgorithmId, v: f64, params: &StrategyParams) -> Result<f64> {
    match algorithm {
        AlgorithmId::Alg1 | AlgorithmId::Alg2 => {
            let (u1, u2) = params.resolve(algorithm, v)?;
            Ok(worst_case_formula(u1, u2, v, 1.0)? / bike_share_time(1.0, v)?)
        }
        AlgorithmId::Alg3 => Ok(cr_alg3_ub(v)),
        AlgorithmId::OfflineBaseline => Ok(1.0),
    }
}

struct Run {
    d: f64,
    side: ExitSide,
    cr: f64,
}

fn runs(algorithm: AlgorithmId, v: f64, grid: &[f64], params: &StrategyParams) -> Result<Vec<Run>> {
    let cells: Vec<(f64, ExitSide)> = grid
        .iter()
        .flat_map(|&d| ExitSide::BOTH.map(|s| (d, s)))
        .collect();
    cells
        .par_iter()
        .map(|&(d, side)| {
            let r = simulate(&Scenario::new(v, d, side, algorithm), params)?;
            Ok(Run {
                d,
                side,
                cr: competitive_ratio(&r)?,
            })
        })
        .collect()
}

fn expanded_grid(algorithm: AlgorithmId, d_grid: &[f64]) -> Result<Vec<f64>> {
    if d_grid.is_empty() {
        return Err(Error::Domain("distance grid is empty".into()));
    }
    Ok(if algorithm == AlgorithmId::Alg3 {
        dyadic_augment(d_grid)
    } else {
        d_grid.to_vec()
    })
}

/// Adversarial search over both sides and every distance in `d_grid`, at the
/// optimal speeds.
pub fn worst_case_cr(algorithm: AlgorithmId, v: f64, d_grid: &[f64]) -> Result<WorstCaseReport> {
    worst_case_cr_with(algorithm, v, d_grid, &StrategyParams::optimal())
}

pub fn worst_case_cr_with(
    algorithm: AlgorithmId,
    v: f64,
    d_grid: &[f64],
    params: &StrategyParams,
) -> Result<WorstCaseReport> {
    let formula = formula_cr(algorithm, v, params)?;
    let grid = expanded_grid(algorithm, d_grid)?;
    let all = runs(algorithm, v, &grid, params)?;
    let side_max = |side: ExitSide| {
        all.iter()
            .filter(|r| r.side == side)
            .map(|r| r.cr)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let worst = all
        .iter()
        .reduce(|best, r| if r.cr > best.cr { r } else { best })
        .expect("grid is non-empty");
    Ok(WorstCaseReport {
        algorithm,
        v,
        worst_d: worst.d,
        worst_side: worst.side,
        sim_cr: worst.cr,
        formula_cr: formula,
        gap: worst.cr - formula,
        cr_left: side_max(ExitSide::Left),
        cr_right: side_max(ExitSide::Right),
        runs: all.len(),
    })
}

/// Largest zig-zag ratio among grid points discovered in one round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalMax {
    pub side: ExitSide,
    pub round: u32,
    /// Exits in `(lower, upper]` are found in this round.
    pub lower: f64,
    pub upper: f64,
    pub argmax_d: f64,
    pub max_cr: f64,
    /// Smallest grid distance in the interval and its ratio.
    pub first_d: f64,
    pub first_cr: f64,
}

impl IntervalMax {
    /// The maximum sits at the left end of the interval (up to ties).
    pub fn at_lower_boundary(&self) -> bool {
        self.first_cr >= self.max_cr - VALIDATION_TOL * self.max_cr
    }
}

/// Per side and round, where on the augmented grid the zig-zag ratio peaks.
pub fn dyadic_interval_maxima(v: f64, d_grid: &[f64]) -> Result<Vec<IntervalMax>> {
    let grid = expanded_grid(AlgorithmId::Alg3, d_grid)?;
    let all = runs(AlgorithmId::Alg3, v, &grid, &StrategyParams::optimal())?;
    let mut out = Vec::new();
    for side in ExitSide::BOTH {
        let first_round = if side == ExitSide::Right { 1 } else { 2 };
        let top = grid.last().copied().unwrap_or(1.0);
        let mut k = first_round;
        while 2f64.powi(k as i32 - 2) < top {
            let (lower, upper) = (2f64.powi(k as i32 - 2), 2f64.powi(k as i32));
            // d = 1 on the left is first reached in round 2
            let inside = |d: f64| (d > lower || (k == 2 && d == lower)) && d <= upper;
            let members: Vec<&Run> = all
                .iter()
                .filter(|r| r.side == side && inside(r.d))
                .collect();
            if let Some(first) = members.first() {
                let best = members
                    .iter()
                    .copied()
                    .reduce(|b, r| if r.cr > b.cr { r } else { b })
                    .expect("non-empty");
                out.push(IntervalMax {
                    side,
                    round: k,
                    lower,
                    upper,
                    argmax_d: best.d,
                    max_cr: best.cr,
                    first_d: first.d,
                    first_cr: first.cr,
                });
            }
            k += 2;
        }
    }
    Ok(out)
}
