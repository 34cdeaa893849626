use rayon::prelude::*;

use super::{competitive_ratio, VALIDATION_TOL};
use crate::analysis::{bike_share_time, cr_alg3_ub, lower_bound, worst_case_formula};
use crate::error::{Error, Result};
use crate::model::{check_result, AlgorithmId, EvacuationResult, ExitSide, Scenario};
use crate::strategies::{simulate, StrategyParams};

#[derive(Debug, Clone, PartialEq)]
pub struct CrossReport {
    pub algorithm: AlgorithmId,
    pub runs: usize,
    /// Relative deviation from the closed form (exact schemes), or
    /// `sim_cr - bound` (zig-zag; negative means slack).
    pub max_deviation: f64,
    pub worst_scenario: Option<Scenario>,
    /// Largest simulated ratio per bike speed, in grid order.
    pub max_cr_per_v: Vec<(f64, f64)>,
}

struct Cell {
    v: f64,
    deviation: f64,
    scenario: Scenario,
    max_cr: f64,
    runs: usize,
}

fn fail(scenario: Scenario, deviation: f64, detail: impl Into<String>) -> Error {
    Error::ValidationFailure {
        scenario: Box::new(scenario),
        deviation,
        detail: detail.into(),
    }
}

fn run_checked(s: Scenario, params: &StrategyParams) -> Result<EvacuationResult> {
    let r = simulate(&s, params).map_err(|e| {
        if e.is_input_error() {
            e
        } else {
            fail(s, f64::NAN, e.to_string())
        }
    })?;
    check_result(&r).map_err(|e| fail(s, f64::NAN, e.to_string()))?;
    Ok(r)
}

fn check_cell(algorithm: AlgorithmId, v: f64, d: f64, params: &StrategyParams) -> Result<Cell> {
    let results: Vec<EvacuationResult> = ExitSide::BOTH
        .iter()
        .map(|&side| run_checked(Scenario::new(v, d, side, algorithm), params))
        .collect::<Result<_>>()?;
    let worst = results
        .iter()
        .reduce(|a, b| {
            if b.evacuation_time > a.evacuation_time {
                b
            } else {
                a
            }
        })
        .expect("two sides");
    let scenario = worst.scenario;
    let max_cr = competitive_ratio(worst)?;

    // the baseline knows the exit, so the online lower bound does not apply
    let lb = lower_bound(v);
    if algorithm != AlgorithmId::OfflineBaseline && max_cr < lb - VALIDATION_TOL {
        return Err(fail(
            scenario,
            lb - max_cr,
            format!("ratio {max_cr} below lower bound {lb}"),
        ));
    }

    let deviation = match algorithm {
        AlgorithmId::Alg1 | AlgorithmId::Alg2 => {
            let (u1, u2) = StrategyParams::optimal().resolve(algorithm, v)?;
            let expected = worst_case_formula(u1, u2, v, d)?;
            let dev = (worst.evacuation_time - expected).abs() / expected;
            if dev > VALIDATION_TOL {
                return Err(fail(
                    scenario,
                    dev,
                    format!(
                        "worst-side time {} differs from closed form {expected}",
                        worst.evacuation_time
                    ),
                ));
            }
            dev
        }
        AlgorithmId::Alg3 => {
            let ub = cr_alg3_ub(v);
            for r in &results {
                let cr = competitive_ratio(r)?;
                if cr > ub + VALIDATION_TOL {
                    return Err(fail(
                        r.scenario,
                        cr - ub,
                        format!("ratio {cr} above bound {ub}"),
                    ));
                }
                let (a, b) = (r.arrival.sender, r.arrival.receiver);
                let skew = (a - b).abs() / a.max(b);
                if skew > VALIDATION_TOL {
                    return Err(fail(
                        r.scenario,
                        skew,
                        format!("arrivals differ: sender {a}, receiver {b}"),
                    ));
                }
            }
            max_cr - ub
        }
        AlgorithmId::OfflineBaseline => {
            let expected = bike_share_time(d, v)?;
            let dev = (worst.evacuation_time - expected).abs() / expected;
            if dev > VALIDATION_TOL {
                return Err(fail(scenario, dev, "ride-share time differs from optimum"));
            }
            dev
        }
    };
    Ok(Cell {
        v,
        deviation,
        scenario,
        max_cr,
        runs: results.len(),
    })
}

/// Simulate every `(v, d)` on both sides and hold the result against the
/// closed forms. `params` supplies the speeds actually simulated, so a
/// perturbed strategy can be checked against the optimal formula.
///
/// Returns the first failing scenario in grid order (`v` major).
pub fn cross_validate<P>(
    algorithm: AlgorithmId,
    v_grid: &[f64],
    d_grid: &[f64],
    params: P,
) -> Result<CrossReport>
where
    P: Fn(f64) -> StrategyParams + Sync,
{
    if v_grid.is_empty() || d_grid.is_empty() {
        return Err(Error::Domain("validation grids must be non-empty".into()));
    }
    let pairs: Vec<(f64, f64)> = v_grid
        .iter()
        .flat_map(|&v| d_grid.iter().map(move |&d| (v, d)))
        .collect();
    let cells: Vec<Result<Cell>> = pairs
        .par_iter()
        .map(|&(v, d)| check_cell(algorithm, v, d, &params(v)))
        .collect();

    let mut report = CrossReport {
        algorithm,
        runs: 0,
        max_deviation: f64::NEG_INFINITY,
        worst_scenario: None,
        max_cr_per_v: Vec::new(),
    };
    for cell in cells {
        let cell = cell?;
        report.runs += cell.runs;
        if cell.deviation > report.max_deviation {
            report.max_deviation = cell.deviation;
            report.worst_scenario = Some(cell.scenario);
        }
        match report.max_cr_per_v.last_mut() {
            Some((v, cr)) if *v == cell.v => *cr = cr.max(cell.max_cr),
            _ => report.max_cr_per_v.push((cell.v, cell.max_cr)),
        }
    }
    Ok(report)
}
