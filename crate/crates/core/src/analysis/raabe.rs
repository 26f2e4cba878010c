//! Ratio-test diagnostic for the coverage bound sequence.
//!
//! The sphere-coverage argument bounds the probability of missing part of
//! the sphere of radius `r` by
//! `b_r = c_dd r^(d-1) prod_{k<=r} (1 - P[count > eps^-k] / 2)^(c_cc k^(d-1))`
//! with the log-tail count law. Summability of `b_r` follows from Raabe's
//! ratio test: the diagnostic `r (b_{r+1}/b_r - 1)` converges to
//! `d - 1 - c_so * c_cc / (2 (log 1/eps)^d)`, which is below -1 once `c_so`
//! is large enough.

use crate::error::FrogError;
use crate::Result;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RaabeRow {
    pub r: u64,
    /// `r (b_{r+1}/b_r - 1)`.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RaabeTable {
    pub eps: f64,
    pub dim: u32,
    pub c_so: f64,
    pub c_dd: f64,
    pub c_cc: f64,
    pub rows: Vec<RaabeRow>,
    /// Diagnostic at the largest tabulated `r`.
    pub limit_estimate: f64,
    /// Closed-form limit `d - 1 - c_so c_cc / (2 (log 1/eps)^d)`.
    pub predicted_limit: f64,
    pub below_minus_one: bool,
}

/// Number of lattice points of `Z^m` with `l1` norm at most `radius`
/// (closed forms for `m <= 3`).
fn l1_ball_count(m: usize, radius: u64) -> u64 {
    let r = radius;
    match m {
        0 => 1,
        1 => 2 * r + 1,
        2 => 2 * r * r + 2 * r + 1,
        3 => {
            1 + 6 * r
                + 6 * r * (r.saturating_sub(1))
                + 4 * r * r.saturating_sub(1) * r.saturating_sub(2) / 3
        }
        _ => panic!("l1_ball_count supports m <= 3"),
    }
}

/// Exact sphere-count constants for dimension `d <= 3`:
/// `c_dd = max_r #sphere(r) / r^(d-1) = 2d` and
/// `c_cc = min_k #(sphere(y, k) inside the ball) / k^(d-1)`, the latter
/// minimized at a sphere corner where the intersection count is the number
/// of `Z^(d-1)` points with `l1` norm at most `floor((k-1)/2)`.
pub fn default_sphere_constants(d: usize) -> Result<(f64, f64)> {
    if d == 0 || d > 3 {
        return Err(FrogError::InvalidParameter {
            name: "d",
            reason: format!("default sphere constants cover d in 1..=3, got {d}"),
        });
    }
    let c_dd = (2 * d) as f64;
    let mut c_cc = f64::INFINITY;
    for k in 1..=10_000u64 {
        let count = l1_ball_count(d - 1, (k - 1) / 2) as f64;
        let ratio = count / (k as f64).powi(d as i32 - 1);
        c_cc = c_cc.min(ratio);
    }
    Ok((c_dd, c_cc))
}

/// Tabulates the ratio diagnostic `r (b_{r+1}/b_r - 1)` at the requested
/// `r` values for the exact log-tail law
/// `P[count >= t] = min(1, c_so / (log t)^d)`.
///
/// `c_dd` and `c_cc` default to the exact lattice constants (`c_dd` cancels
/// in the ratio but is carried in the report).
pub fn raabe_ratio_table(
    eps: f64,
    dim: usize,
    c_so: f64,
    r_values: &[u64],
    constants: Option<(f64, f64)>,
) -> Result<RaabeTable> {
    if !(eps > 0.0 && 2.0 * dim as f64 * eps <= 1.0 + 1e-12) {
        return Err(FrogError::InvalidParameter {
            name: "eps",
            reason: format!("eps = {eps} not in (0, 1/{}]", 2 * dim),
        });
    }
    if !(c_so > 0.0) {
        return Err(FrogError::InvalidParameter {
            name: "c_so",
            reason: format!("need c_so > 0, got {c_so}"),
        });
    }
    if r_values.is_empty() {
        return Err(FrogError::EmptyInput { what: "r values" });
    }
    let (c_dd, c_cc) = match constants {
        Some(c) => c,
        None => default_sphere_constants(dim)?,
    };
    let log_inv_eps = (1.0 / eps).ln();
    let d = dim as f64;
    let rows: Vec<RaabeRow> = r_values
        .iter()
        .map(|&r| {
            let k = (r + 1) as f64;
            // P[count > eps^-k] with log eps^-k = k log(1/eps).
            let p = (c_so / (k * log_inv_eps).powf(d)).min(1.0);
            let factor = (c_cc * k.powf(d - 1.0) * (1.0 - p / 2.0).ln()).exp();
            let ratio = (1.0 + 1.0 / r as f64).powf(d - 1.0) * factor;
            RaabeRow {
                r,
                value: r as f64 * (ratio - 1.0),
            }
        })
        .collect();
    let limit_estimate = rows.last().unwrap().value;
    let predicted_limit = d - 1.0 - c_so * c_cc / (2.0 * log_inv_eps.powf(d));
    Ok(RaabeTable {
        eps,
        dim: dim as u32,
        c_so,
        c_dd,
        c_cc,
        below_minus_one: limit_estimate < -1.0,
        rows,
        limit_estimate,
        predicted_limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_counts_match_known_values() {
        assert_eq!(l1_ball_count(0, 5), 1);
        assert_eq!(l1_ball_count(1, 3), 7);
        assert_eq!(l1_ball_count(2, 2), 13);
        assert_eq!(l1_ball_count(3, 1), 7);
    }

    #[test]
    fn exact_constants() {
        assert_eq!(default_sphere_constants(1).unwrap(), (2.0, 1.0));
        assert_eq!(default_sphere_constants(2).unwrap(), (4.0, 0.5));
        assert_eq!(default_sphere_constants(3).unwrap(), (6.0, 0.25));
        assert!(default_sphere_constants(4).is_err());
    }

    #[test]
    fn diagnostic_stabilizes_for_large_c_so() {
        let rs: Vec<u64> = (10_000..10_050).collect();
        let t = raabe_ratio_table(0.125, 2, 40.0, &rs, None).unwrap();
        for w in t.rows.windows(2) {
            assert!((w[1].value - w[0].value).abs() < 1e-3);
        }
        assert!((t.limit_estimate - t.predicted_limit).abs() < 0.01);
        assert!(t.below_minus_one);
    }

    #[test]
    fn doubling_c_so_lowers_the_limit() {
        let rs = [100_000u64];
        let a = raabe_ratio_table(0.125, 2, 10.0, &rs, None).unwrap();
        let b = raabe_ratio_table(0.125, 2, 20.0, &rs, None).unwrap();
        assert!(b.limit_estimate < a.limit_estimate);
    }

    #[test]
    fn tiny_c_so_limit_near_d_minus_one() {
        for d in [1usize, 2, 3] {
            let t =
                raabe_ratio_table(0.5 / d as f64 * 0.5, d, 1e-6, &[1_000_000u64], None).unwrap();
            assert!(
                (t.limit_estimate - (d as f64 - 1.0)).abs() < 1e-3,
                "d = {d}: {}",
                t.limit_estimate
            );
            assert!(!t.below_minus_one);
        }
    }
}
