use std::fmt::Write;

use rayon::prelude::*;

use super::{linear_grid, log_grid, worst_case_cr, WorstCaseReport};
use crate::analysis::CrCurvePoint;
use crate::error::{Error, Result};
use crate::model::AlgorithmId;

pub const CSV_HEADER: &str = "v,cr_alg1,cr_alg2,cr_alg3_ub,lower_bound,selected";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GridScale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub v_min: f64,
    pub v_max: f64,
    pub steps: usize,
    /// Distances for the optional zig-zag bound check; may be empty.
    pub d_grid: Vec<f64>,
    pub scale: GridScale,
}

impl SweepSpec {
    /// `steps = 1` is accepted only for a single speed (`v_min == v_max`).
    pub fn new(
        v_min: f64,
        v_max: f64,
        steps: usize,
        d_grid: Vec<f64>,
        scale: GridScale,
    ) -> Result<Self> {
        if !(v_min > 1.0) || !v_min.is_finite() {
            return Err(Error::SpeedOutOfRange(v_min));
        }
        if !(v_max >= v_min) || !v_max.is_finite() {
            return Err(Error::Domain(format!(
                "v_max must be at least v_min, got {v_max}"
            )));
        }
        if steps == 0 || (steps == 1 && v_min != v_max) {
            return Err(Error::Domain(format!(
                "steps must be at least 2 (or 1 when v_min = v_max), got {steps}"
            )));
        }
        if let Some(&d) = d_grid.iter().find(|&&d| !(d >= 1.0) || !d.is_finite()) {
            return Err(Error::Alg3DistanceTooSmall(d));
        }
        Ok(SweepSpec {
            v_min,
            v_max,
            steps,
            d_grid,
            scale,
        })
    }

    pub fn speeds(&self) -> Vec<f64> {
        match self.scale {
            GridScale::Linear => linear_grid(self.v_min, self.v_max, self.steps),
            GridScale::Log => log_grid(self.v_min, self.v_max, self.steps),
        }
        .expect("spec was validated")
    }
}

/// One curve point per speed, ascending in `v`.
pub fn sweep(spec: &SweepSpec) -> Vec<CrCurvePoint> {
    spec.speeds()
        .par_iter()
        .map(|&v| CrCurvePoint::at(v))
        .collect()
}

/// Header plus one LF-terminated line per row. Numbers use the shortest
/// decimal that reads back as the same `f64`.
pub fn sweep_csv(rows: &[CrCurvePoint]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in rows {
        let cr2 = p.cr_alg2.map(|c| c.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            p.v, p.cr_alg1, cr2, p.cr_alg3_ub, p.lower_bound, p.selected
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Zig-zag worst case over `spec.d_grid` for every speed of the sweep.
pub fn alg3_bound_rows(spec: &SweepSpec) -> Result<Vec<WorstCaseReport>> {
    spec.speeds()
        .iter()
        .map(|&v| worst_case_cr(AlgorithmId::Alg3, v, &spec.d_grid))
        .collect()
}
