use crate::error::{Error, Result};

fn check(lo: f64, hi: f64, n: usize) -> Result<()> {
    if n == 0 || !(lo <= hi) || (n == 1 && lo != hi) {
        return Err(Error::Domain(format!(
            "grid needs lo <= hi and n >= 2 (or n = 1 with lo = hi), got [{lo}, {hi}] x {n}"
        )));
    }
    Ok(())
}

/// `n` evenly spaced points from `lo` to `hi`, both ends exact.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check(lo, hi, n)?;
    if n == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect())
}

/// `n` geometrically spaced points from `lo` to `hi` (`lo > 0`), both ends exact.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check(lo, hi, n)?;
    if !(lo > 0.0) {
        return Err(Error::Domain(format!("log grid needs lo > 0, got {lo}")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            i if i + 1 == n => hi,
            i => lo * (ratio * i as f64).exp(),
        })
        .collect())
}

/// Add the points where the zig-zag ratio jumps: just above `2^(k-2)` and at `2^k`,
/// restricted to the span of `grid`. Output is sorted and deduplicated.
pub fn dyadic_augment(grid: &[f64]) -> Vec<f64> {
    let mut out = grid.to_vec();
    let (lo, hi) = grid
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
            (a.min(x), b.max(x))
        });
    if lo.is_finite() && hi.is_finite() {
        let mut k = 1;
        while 2f64.powi(k - 2) <= hi {
            let just_above = 2f64.powi(k - 2) * (1.0 + 1e-6);
            let top = 2f64.powi(k);
            for x in [just_above, top] {
                if x >= lo && x <= hi {
                    out.push(x);
                }
            }
            k += 1;
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_hit_both_ends() {
        let g = linear_grid(1.1, 3.0, 20).unwrap();
        assert_eq!(g.len(), 20);
        assert_eq!((g[0], g[19]), (1.1, 3.0));
        let g = log_grid(1.0, 256.0, 9).unwrap();
        assert_eq!((g[0], g[8]), (1.0, 256.0));
        assert!((g[4] - 16.0).abs() < 1e-12);
        assert_eq!(linear_grid(3.0, 3.0, 1).unwrap(), vec![3.0]);
        assert!(linear_grid(1.0, 2.0, 1).is_err());
        assert!(log_grid(0.0, 2.0, 3).is_err());
    }

    #[test]
    fn dyadic_points_are_added() {
        let g = dyadic_augment(&[1.0, 64.0]);
        assert!(g.contains(&1.000001));
        assert!(g.contains(&2.000002));
        assert!(g.contains(&32.0) && g.contains(&64.0));
        assert!(g.contains(&16.000016));
        assert!(g.iter().all(|x| (1.0..=64.0).contains(x)));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
