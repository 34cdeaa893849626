use crate::error::{Error, Result};

/// Arrival of the later robot when the first rider drops the bike at `x`.
pub fn ride_share_time(d: f64, v: f64, x: f64) -> f64 {
    (x / v + d - x).max(x + (d - x) / v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RideShareBest {
    pub x: f64,
    pub time: f64,
}

/// Exhaustive search of the drop point over a uniform grid on `[0, d]`.
pub fn ride_share_bruteforce(d: f64, v: f64, grid_size: usize) -> Result<RideShareBest> {
    if grid_size < 3 {
        return Err(Error::Domain(format!(
            "grid_size must be at least 3, got {grid_size}"
        )));
    }
    if !(v > 1.0) {
        return Err(Error::SpeedOutOfRange(v));
    }
    if !(d >= 0.0) {
        return Err(Error::Domain(format!(
            "distance must be non-negative, got {d}"
        )));
    }
    let steps = (grid_size - 1) as f64;
    let best = (0..grid_size)
        .map(|i| {
            let x = d * i as f64 / steps;
            RideShareBest {
                x,
                time: ride_share_time(d, v, x),
            }
        })
        .min_by(|a, b| a.time.total_cmp(&b.time))
        .expect("grid is non-empty");
    Ok(best)
}
