//! The verification suite behind `bikevac verify`.

use std::time::Instant;

use super::{
    cross_validate, dyadic_augment, dyadic_interval_maxima, linear_grid, log_grid,
    ride_share_bruteforce, worst_case_cr, CrossReport,
};
use crate::analysis::{
    bike_share_time, cr_alg1, cr_alg2, cr_alg2_formula, cr_alg3_ub, find_crossover,
    lower_bound_fast, lower_bound_slow, opt_u1, opt_u2, CrCurvePoint,
};
use crate::engine::identical_logs;
use crate::error::Result;
use crate::model::{check_result, AlgorithmId, ExitSide, Scenario};
use crate::strategies::{simulate, StrategyParams};
use crate::trace::TraceFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Level {
    #[default]
    Quick,
    Full,
}

/// Where the continuity check takes `u2*(v)` from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum U2Source {
    /// Root of the quadratic coefficients.
    #[default]
    Quadratic,
    /// Closed-form radical with a `-7 v^2` term under the root. Kept only as
    /// a fault injection: it disagrees with the quadratic.
    FaultyRadical,
}

impl U2Source {
    pub fn u2(self, v: f64) -> Result<f64> {
        match self {
            U2Source::Quadratic => Ok(opt_u2(v)?.value),
            U2Source::FaultyRadical => {
                let disc = v.powi(4) + 18.0 * v.powi(3) - 7.0 * v * v + 4.0 * v + 4.0;
                Ok((v * v - 3.0 * v - 2.0 - disc.sqrt()) / (4.0 * (1.0 - v)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name,
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &'static str, r: Result<String>) -> Self {
        match r {
            Ok(detail) => Self::new(name, true, detail),
            Err(e) => Self::new(name, false, e.to_string()),
        }
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

pub const ALG1_SPEEDS: [f64; 5] = [1.2, 1.5, 2.0, 2.5, 3.0];
pub const ALG2_SPEEDS: [f64; 5] = [3.0, 4.0, 5.0, 7.0, 10.0];
pub const EXACT_DISTANCES: [f64; 3] = [0.5, 1.0, 7.3];
pub const ALG3_SPEEDS: [f64; 4] = [10.5, 12.0, 20.0, 50.0];

/// Log grid on `[1, 256]` plus the dyadic jump points.
pub fn alg3_distance_grid(points: usize) -> Vec<f64> {
    dyadic_augment(&log_grid(1.0, 256.0, points).expect("valid grid"))
}

/// Runs every check. Checks are independent; a failure does not stop the rest.
pub fn run_suite(level: Level, u2_source: U2Source) -> Vec<CheckOutcome> {
    let full = level == Level::Full;
    let mut out = vec![
        CheckOutcome::from_result("ride-share-optimum", check_ride_share()),
        check_endpoint(),
        CheckOutcome::from_result("continuity-v3", check_continuity(u2_source)),
    ];

    let (alg1_v, alg2_v, dists) = if full {
        (
            linear_grid(1.05, 3.0, 40).expect("valid grid"),
            linear_grid(3.0, 10.0, 36).expect("valid grid"),
            vec![0.5, 1.0, 2.0, 7.3, 100.0],
        )
    } else {
        (
            ALG1_SPEEDS.to_vec(),
            ALG2_SPEEDS.to_vec(),
            EXACT_DISTANCES.to_vec(),
        )
    };
    out.push(CheckOutcome::from_result(
        "alg1-sim-vs-formula",
        exact_check(AlgorithmId::Alg1, &alg1_v, &dists),
    ));
    out.push(CheckOutcome::from_result(
        "alg2-sim-vs-formula",
        exact_check(AlgorithmId::Alg2, &alg2_v, &dists),
    ));
    out.push(CheckOutcome::from_result(
        "baseline-sim-vs-optimum",
        exact_check(AlgorithmId::OfflineBaseline, &[1.5, 3.0, 20.0], &dists),
    ));

    let alg3_v = if full {
        let mut v = ALG3_SPEEDS.to_vec();
        v.extend([11.0, 15.0, 30.0, 100.0, 1000.0]);
        v
    } else {
        ALG3_SPEEDS.to_vec()
    };
    let alg3_d = alg3_distance_grid(if full { 400 } else { 200 });
    out.push(CheckOutcome::from_result(
        "alg3-bound",
        alg3_check(&alg3_v, &alg3_d),
    ));
    out.push(CheckOutcome::from_result(
        "alg3-interval-peaks",
        check_interval_peaks(&alg3_d),
    ));

    out.push(CheckOutcome::from_result(
        "lower-bound-order",
        check_lower_bound(if full { 10_000 } else { 1000 }),
    ));
    out.push(CheckOutcome::from_result("regimes", check_regimes()));
    out.push(CheckOutcome::from_result(
        "local-optimality",
        check_local_optimality(),
    ));
    out.push(CheckOutcome::from_result(
        "side-symmetry",
        check_side_symmetry(),
    ));
    out.push(CheckOutcome::from_result(
        "perturbation-detected",
        check_perturbation(),
    ));
    out.push(CheckOutcome::from_result(
        "trace-determinism",
        check_traces(&alg1_v, &alg2_v, &alg3_v, &dists),
    ));
    out
}

fn failed(msg: String) -> crate::error::Error {
    crate::error::Error::InvariantViolation(msg)
}

fn check_ride_share() -> Result<String> {
    let exact = bike_share_time(1.0, 2.0)?;
    let best = ride_share_bruteforce(1.0, 2.0, 10001)?;
    let step = 1.0 / 10000.0;
    if exact != 0.75 || (best.time - 0.75).abs() > 1e-8 || (best.x - 0.5).abs() > step {
        return Err(failed(format!(
            "exact {exact}, brute force {} at x = {}",
            best.time, best.x
        )));
    }
    Ok(format!(
        "time 0.75, brute force {} at x = {}",
        best.time, best.x
    ))
}

fn check_endpoint() -> CheckOutcome {
    let value = cr_alg1(1.0 + 1e-6).value;
    let target = 3.0 + 2.0 * 2f64.sqrt();
    let dev = (value - target).abs();
    CheckOutcome::new(
        "alg1-endpoint",
        dev <= 1e-4,
        format!("cr_alg1(1 + 1e-6) = {value}, |diff from 3 + 2 sqrt 2| = {dev:.3e}"),
    )
}

fn check_continuity(source: U2Source) -> Result<String> {
    let v = 3.0;
    let u1 = opt_u1(v).value;
    let u2 = source.u2(v)?;
    let c1 = cr_alg1(v).value;
    let c2 = 2.0 * v * (v + 1.0 + u2) / ((v + 1.0) * v);
    let detail = format!("v = 3: u1* = {u1}, u2* = {u2}, cr_alg1 = {c1}, cr_alg2 = {c2}");
    let ok = [(u1, 1.0), (u2, 3.0), (c1, 3.5), (c2, 3.5)]
        .iter()
        .all(|&(x, want)| (x - want).abs() <= 1e-9);
    if source == U2Source::Quadratic && (cr_alg2(v)? - 3.5).abs() > 1e-9 {
        return Err(failed(detail));
    }
    if ok {
        Ok(detail)
    } else {
        Err(failed(detail))
    }
}

fn exact_check(alg: AlgorithmId, v: &[f64], d: &[f64]) -> Result<String> {
    let t = Instant::now();
    let r = cross_validate(alg, v, d, |_| StrategyParams::optimal())?;
    Ok(format!(
        "{} runs, max relative deviation {:.3e}, {:.2?}",
        r.runs,
        r.max_deviation,
        t.elapsed()
    ))
}

fn alg3_check(v: &[f64], d: &[f64]) -> Result<String> {
    let t = Instant::now();
    let r: CrossReport = cross_validate(AlgorithmId::Alg3, v, d, |_| StrategyParams::optimal())?;
    let per_v: Vec<String> = r
        .max_cr_per_v
        .iter()
        .map(|&(v, cr)| format!("v={v}: {cr:.9} <= {:.9}", cr_alg3_ub(v)))
        .collect();
    Ok(format!(
        "{} runs over {} distances, {:.2?}; {}",
        r.runs,
        d.len(),
        t.elapsed(),
        per_v.join(", ")
    ))
}

fn check_interval_peaks(d: &[f64]) -> Result<String> {
    let mut n = 0;
    for v in [12.0, 20.0] {
        for m in dyadic_interval_maxima(v, d)? {
            if !m.at_lower_boundary() {
                return Err(failed(format!(
                    "v = {v}, {} round {}: peak {} at d = {}, left end d = {} gives {}",
                    m.side, m.round, m.max_cr, m.argmax_d, m.first_d, m.first_cr
                )));
            }
            n += 1;
        }
    }
    Ok(format!("{n} intervals peak at their left end"))
}

fn check_lower_bound(points: usize) -> Result<String> {
    let mut min_slack = f64::INFINITY;
    for v in linear_grid(1.01, 100.0, points)? {
        let p = CrCurvePoint::at(v);
        let slack = p.min_feasible_cr() - p.lower_bound;
        if slack < -1e-9 {
            return Err(failed(format!(
                "v = {v}: lower bound {} above {}",
                p.lower_bound,
                p.min_feasible_cr()
            )));
        }
        min_slack = min_slack.min(slack);
    }
    let (slow, fast) = (lower_bound_slow(3.0), lower_bound_fast(3.0));
    if slow != 1.5 || fast != 1.5 {
        return Err(failed(format!("branches at v = 3: {slow} and {fast}")));
    }
    Ok(format!(
        "{points} speeds, min slack {min_slack:.6}; both branches 1.5 at v = 3"
    ))
}

fn check_regimes() -> Result<String> {
    for v in linear_grid(1.01, 2.99, 200)? {
        let u2 = opt_u2(v)?.value;
        if !(u2 > v) {
            return Err(failed(format!("opt_u2({v}) = {u2} is not above v")));
        }
    }
    for v in linear_grid(3.01, 100.0, 200)? {
        let u1 = opt_u1(v).value;
        if !(u1 > 1.0) {
            return Err(failed(format!("opt_u1({v}) = {u1} is not above 1")));
        }
    }
    let x = find_crossover(
        |v| opt_u2(v).map(|_| cr_alg2_formula(v)).unwrap_or(f64::NAN),
        cr_alg3_ub,
        9.0,
        13.0,
    )?;
    if !(x > 10.0 && x < 12.0) {
        return Err(failed(format!("crossover at {x}")));
    }
    Ok(format!(
        "Alg2 infeasible below 3, Alg1 infeasible above 3; cr_alg2 = cr_alg3_ub at v = {x:.9} (selector switches at 10)"
    ))
}

fn worst_time(alg: AlgorithmId, v: f64, params: &StrategyParams) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for side in ExitSide::BOTH {
        worst = worst.max(simulate(&Scenario::new(v, 1.0, side, alg), params)?.evacuation_time);
    }
    Ok(worst)
}

fn check_local_optimality() -> Result<String> {
    let mut margins = Vec::new();
    let u1 = opt_u1(2.0).value;
    let u2 = opt_u2(5.0)?.value;
    let cases = [
        (
            AlgorithmId::Alg1,
            2.0,
            StrategyParams::optimal().with_u1(u1 - 1e-3),
        ),
        (
            AlgorithmId::Alg1,
            2.0,
            StrategyParams::optimal().with_u1(u1 + 1e-3),
        ),
        (
            AlgorithmId::Alg2,
            5.0,
            StrategyParams::optimal().with_u2(u2 - 1e-3),
        ),
        (
            AlgorithmId::Alg2,
            5.0,
            StrategyParams::optimal().with_u2(u2 + 1e-3),
        ),
    ];
    for (alg, v, params) in cases {
        let base = worst_time(alg, v, &StrategyParams::optimal())?;
        let perturbed = worst_time(alg, v, &params)?;
        let margin = perturbed - base;
        if !(margin > 1e-8) {
            return Err(failed(format!(
                "{alg} at v = {v} with {params:?}: margin {margin:e}"
            )));
        }
        margins.push(margin);
    }
    let min = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(format!("smallest increase {min:.3e}"))
}

fn check_side_symmetry() -> Result<String> {
    let mut parts = Vec::new();
    for (alg, v) in [(AlgorithmId::Alg1, 2.0), (AlgorithmId::Alg2, 5.0)] {
        let r = worst_case_cr(alg, v, &[1.0])?;
        if (r.cr_left - r.cr_right).abs() > 1e-9 {
            return Err(failed(format!(
                "{alg} v = {v}: left {} right {}",
                r.cr_left, r.cr_right
            )));
        }
        parts.push(format!("{alg} v={v}: {:.9}", r.sim_cr));
    }
    Ok(parts.join(", "))
}

fn check_perturbation() -> Result<String> {
    match cross_validate(AlgorithmId::Alg1, &[2.0], &[1.0], |v| {
        StrategyParams::optimal().with_u1(opt_u1(v).value / 2.0)
    }) {
        Err(crate::error::Error::ValidationFailure { deviation, .. }) => {
            Ok(format!("halved u1 rejected, deviation {deviation:.3e}"))
        }
        Err(e) => Err(e),
        Ok(_) => Err(failed("halved u1 passed the formula check".into())),
    }
}

fn check_traces(alg1_v: &[f64], alg2_v: &[f64], alg3_v: &[f64], dists: &[f64]) -> Result<String> {
    let mut scenarios = Vec::new();
    for side in ExitSide::BOTH {
        for &d in dists {
            scenarios.extend(
                alg1_v
                    .iter()
                    .map(|&v| Scenario::new(v, d, side, AlgorithmId::Alg1)),
            );
            scenarios.extend(
                alg2_v
                    .iter()
                    .map(|&v| Scenario::new(v, d, side, AlgorithmId::Alg2)),
            );
        }
        for d in [1.0, 1.5, 2.000002, 5.0, 64.0, 200.0] {
            scenarios.extend(
                alg3_v
                    .iter()
                    .map(|&v| Scenario::new(v, d, side, AlgorithmId::Alg3)),
            );
        }
    }
    let params = StrategyParams::optimal();
    for s in &scenarios {
        let a = simulate(s, &params)?;
        let b = simulate(s, &params)?;
        check_result(&a)?;
        if !identical_logs(&a.events, &b.events) {
            return Err(failed(format!("{s:?}: event logs differ between runs")));
        }
        let t = TraceFile::from(&a);
        let back = TraceFile::from_json(&t.to_json())
            .map_err(|e| failed(format!("{s:?}: trace does not parse: {e}")))?;
        if !t.bit_identical(&back) || !t.bit_identical(&TraceFile::from(&b)) {
            return Err(failed(format!("{s:?}: trace round trip is not exact")));
        }
    }
    Ok(format!("{} scenarios", scenarios.len()))
}
