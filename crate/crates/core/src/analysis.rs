//! Closed-form evacuation times, optimal speeds and competitive ratios.
//!
//! Notation: `u1` is the sender's walking speed, `u2` the receiver's outbound
//! biking speed, `v` the bike speed and `d` the exit distance. Every
//! competitive ratio is taken against [`bike_share_time`], the optimum when
//! the exit location is known.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::AlgorithmId;

/// Speed at which Alg1 and Alg2 hand over (both ratios equal 3.5 there).
pub const ALG1_ALG2_SWITCH: f64 = 3.0;
/// Speed above which the zig-zag algorithm is selected.
pub const ALG2_ALG3_SWITCH: f64 = 10.0;

/// Bisection stops once the bracket is this narrow.
pub const CROSSOVER_TOL: f64 = 1e-9;

fn check_v(v: f64) -> Result<()> {
    if v > 1.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::SpeedOutOfRange(v))
    }
}

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

/// A value together with whether its underlying speed is physically admissible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Flagged {
    pub value: f64,
    pub feasible: bool,
}

/// Time for two robots sharing one bike to cover distance `d`.
pub fn bike_share_time(d: f64, v: f64) -> Result<f64> {
    check_v(v)?;
    if !(d >= 0.0) {
        return Err(domain(format!("distance must be non-negative, got {d}")));
    }
    Ok(d * (v + 1.0) / (2.0 * v))
}

/// Effective speed of the ride-sharing ensemble.
pub fn ensemble_speed(v: f64) -> Result<f64> {
    check_v(v)?;
    Ok(2.0 * v / (v + 1.0))
}

/// Point at which the first rider drops the bike when sharing over `d`.
pub fn handoff_point(d: f64) -> f64 {
    d / 2.0
}

fn check_common(v: f64, d: f64) -> Result<()> {
    check_v(v)?;
    if !(d > 0.0) {
        return Err(Error::NonPositiveDistance(d));
    }
    Ok(())
}

/// Evacuation time when the sender finds the exit.
pub fn evac_time_case1(u1: f64, u2: f64, v: f64, d: f64) -> Result<f64> {
    check_common(v, d)?;
    if !(u1 > 0.0 && u1 <= 1.0) {
        return Err(domain(format!("u1 must lie in (0, 1], got {u1}")));
    }
    if !(0.0..=v).contains(&u2) {
        return Err(domain(format!("u2 must lie in [0, v], got {u2}")));
    }
    Ok(d / u1 + d * u2 / (v * u1) + d / v)
}

/// Evacuation time when the receiver finds the exit, chases the sender down
/// and the pair ride-shares back.
pub fn evac_time_case2(u1: f64, u2: f64, v: f64, d: f64) -> Result<f64> {
    check_common(v, d)?;
    if u1 >= v {
        return Err(Error::DegenerateChase { u1, v });
    }
    if !(u1 >= 0.0) {
        return Err(domain(format!("u1 must be non-negative, got {u1}")));
    }
    if !(u2 > 0.0 && u2 <= v) {
        return Err(domain(format!("u2 must lie in (0, v], got {u2}")));
    }
    let num = 2.0 * d * v * v
        + 2.0 * d * u2 * v
        + d * u1 * v * v
        + d * u1 * v
        + d * u2 * v * v
        + d * u2 * v;
    Ok(num / (2.0 * u2 * v * (v - u1)))
}

/// Adversarial (worst side) evacuation time of the opposite-direction scheme.
pub fn worst_case_formula(u1: f64, u2: f64, v: f64, d: f64) -> Result<f64> {
    Ok(evac_time_case1(u1, u2, v, d)?.max(evac_time_case2(u1, u2, v, d)?))
}

/// Real roots of `a x^2 + b x + c`, computed without cancellation.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Option<(f64, f64)> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 || a == 0.0 {
        return None;
    }
    let q = -0.5 * (b + disc.sqrt().copysign(b));
    if q == 0.0 {
        return Some((0.0, 0.0));
    }
    Some((q / a, c / q))
}

fn positive_root(a: f64, b: f64, c: f64) -> Option<f64> {
    let (r0, r1) = quadratic_roots(a, b, c)?;
    match (r0 > 0.0, r1 > 0.0) {
        (true, true) => Some(r0.min(r1)),
        (true, false) => Some(r0),
        (false, true) => Some(r1),
        (false, false) => None,
    }
}

/// Coefficients `(a, b, c)` of the equal-time condition for `u1` (biker at `v`).
pub fn u1_quadratic(v: f64) -> (f64, f64, f64) {
    (3.0 + v, 7.0 * v + v * v, -4.0 * v * v)
}

/// Coefficients `(a, b, c)` of the equal-time condition for `u2` (walker at 1).
pub fn u2_quadratic(v: f64) -> (f64, f64, f64) {
    (2.0 - 2.0 * v, 3.0 * v - v * v + 2.0, 3.0 * v * v + v)
}

/// Residual of `a x^2 + b x + c` scaled by the largest term magnitude.
pub fn scaled_residual((a, b, c): (f64, f64, f64), x: f64) -> f64 {
    let terms = [a * x * x, b * x, c];
    let scale = terms
        .iter()
        .fold(0.0_f64, |m, t| m.max(t.abs()))
        .max(f64::MIN_POSITIVE);
    (terms[0] + terms[1] + terms[2]).abs() / scale
}

/// Sender speed equalising both exit sides when the biker rides at full speed.
/// Feasible (at most 1) exactly when `v <= 3`.
pub fn opt_u1(v: f64) -> Flagged {
    let (a, b, c) = u1_quadratic(v);
    // c < 0 < a, so exactly one root is positive
    let value = positive_root(a, b, c).unwrap_or(f64::NAN);
    Flagged {
        value,
        feasible: value > 0.0 && value <= 1.0,
    }
}

/// Receiver speed equalising both exit sides when the sender walks at unit speed.
/// Feasible when `1 <= u2 <= v`, which holds for `v >= 3`.
pub fn opt_u2(v: f64) -> Result<Flagged> {
    check_v(v)?;
    let coeffs = u2_quadratic(v);
    let (a, b, c) = coeffs;
    let value = positive_root(a, b, c).ok_or(Error::NoPositiveRoot(v))?;
    if scaled_residual(coeffs, value) > 1e-9 {
        return Err(Error::NoPositiveRoot(v));
    }
    Ok(Flagged {
        value,
        feasible: (1.0..=v).contains(&value),
    })
}

/// Competitive ratio of Alg1 at its optimal sender speed.
///
/// Outside `1 < v <= 3` the optimal `u1` exceeds the walking cap and the value
/// is the formula's analytic continuation, flagged infeasible.
pub fn cr_alg1(v: f64) -> Flagged {
    let u1 = opt_u1(v);
    Flagged {
        value: cr_alg1_at(v, u1.value),
        feasible: u1.feasible && v > 1.0,
    }
}

/// Competitive ratio of the opposite-direction scheme with the biker at `v`
/// and the walker at `u1`, evaluated on the `E1` branch.
fn cr_alg1_at(v: f64, u1: f64) -> f64 {
    // ordered so v = 3, u1 = 1 gives exactly 42 / 12
    (2.0 * v * (2.0 * v + u1)) / ((v + 1.0) * v * u1)
}

/// Best ratio Alg1 can reach with a legal walking speed: `u1 = min(u1*, 1)`.
pub fn cr_alg1_clamped(v: f64) -> Result<f64> {
    check_v(v)?;
    let u1 = opt_u1(v).value.min(1.0);
    Ok(worst_case_formula(u1, v, v, 1.0)? / bike_share_time(1.0, v)?)
}

fn cr_alg2_at(v: f64, u2: f64) -> f64 {
    (2.0 * v * (v + 1.0 + u2)) / ((v + 1.0) * v)
}

/// Competitive ratio of Alg2 at its optimal receiver speed.
pub fn cr_alg2(v: f64) -> Result<f64> {
    let u2 = opt_u2(v)?;
    if !u2.feasible {
        return Err(Error::InfeasibleSpeed {
            what: "u2",
            value: u2.value,
            min: 1.0,
            max: v,
        });
    }
    Ok(cr_alg2_at(v, u2.value))
}

/// The Alg2 expression without the feasibility gate (NaN if `v <= 1`).
pub fn cr_alg2_formula(v: f64) -> f64 {
    opt_u2(v)
        .map(|u| cr_alg2_at(v, u.value))
        .unwrap_or(f64::NAN)
}

/// Upper bound on the zig-zag algorithm's competitive ratio.
pub fn cr_alg3_ub(v: f64) -> f64 {
    (2.0 * v / (v + 1.0)) * (9.0 / v + 0.5 - 1.0 / (2.0 * v * v))
}

/// Distance back from the exit where the zig-zag sender leaves the bike.
pub fn drop_off_distance(d: f64, v: f64) -> Result<f64> {
    check_common(v, d)?;
    Ok(d / 2.0 - d / (2.0 * v))
}

/// Lower-bound branch for slow bikes (`v <= 3`).
pub fn lower_bound_slow(v: f64) -> f64 {
    6.0 / (v + 1.0)
}

/// Lower-bound branch for fast bikes (`v > 3`); equals `(v + 3) / (v + 1)`.
pub fn lower_bound_fast(v: f64) -> f64 {
    (v * v + 2.0 * v - 3.0) / (v * v - 1.0)
}

/// Lower bound on the competitive ratio of any algorithm.
pub fn lower_bound(v: f64) -> f64 {
    if v <= ALG1_ALG2_SWITCH {
        lower_bound_slow(v)
    } else {
        lower_bound_fast(v)
    }
}

/// Which algorithm to run for bike speed `v`. Ties go to the lower index.
pub fn select_algorithm(v: f64) -> AlgorithmId {
    if v <= ALG1_ALG2_SWITCH {
        AlgorithmId::Alg1
    } else if v <= ALG2_ALG3_SWITCH {
        AlgorithmId::Alg2
    } else {
        AlgorithmId::Alg3
    }
}

/// Bisection for a root of `f - g` on `[lo, hi]`.
pub fn find_crossover<F, G>(f: F, g: G, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let h = |x: f64| f(x) - g(x);
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let (mut ha, hb) = (h(a), h(b));
    if ha == 0.0 {
        return Ok(a);
    }
    if hb == 0.0 {
        return Ok(b);
    }
    if !(ha.signum() != hb.signum()) || ha.is_nan() || hb.is_nan() {
        return Err(Error::NoSignChange { lo, hi });
    }
    while b - a > CROSSOVER_TOL {
        let m = 0.5 * (a + b);
        let hm = h(m);
        if hm == 0.0 {
            return Ok(m);
        }
        if hm.signum() == ha.signum() {
            a = m;
            ha = hm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// One row of the performance curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrCurvePoint {
    pub v: f64,
    pub cr_alg1: f64,
    pub cr_alg2: Option<f64>,
    pub cr_alg3_ub: f64,
    pub lower_bound: f64,
    pub selected: AlgorithmId,
}

impl CrCurvePoint {
    pub fn at(v: f64) -> Self {
        CrCurvePoint {
            v,
            cr_alg1: cr_alg1(v).value,
            cr_alg2: cr_alg2(v).ok(),
            cr_alg3_ub: cr_alg3_ub(v),
            lower_bound: lower_bound(v),
            selected: select_algorithm(v),
        }
    }

    /// Ratio of the algorithm the selector picks.
    pub fn selected_cr(&self) -> f64 {
        match self.selected {
            AlgorithmId::Alg1 => self.cr_alg1,
            AlgorithmId::Alg2 => self.cr_alg2.unwrap_or(f64::INFINITY),
            AlgorithmId::Alg3 => self.cr_alg3_ub,
            AlgorithmId::OfflineBaseline => 1.0,
        }
    }

    /// Smallest ratio among algorithms whose speeds are admissible at this `v`.
    pub fn min_feasible_cr(&self) -> f64 {
        let mut best = self.cr_alg3_ub;
        if cr_alg1(self.v).feasible {
            best = best.min(self.cr_alg1);
        }
        if let Some(c) = self.cr_alg2 {
            best = best.min(c);
        }
        best
    }
}
