//! Invariant measure of the comb's tooth-height factor chain.
//!
//! Collapsing the comb walk along its spine leaves a birth-death chain on
//! tooth heights: up with probability `p2`, down (clamped at 0) with
//! `1 - p2`. For `p2 < 1/2` the chain has an invariant probability measure
//! with a geometric profile; for `p2 >= 1/2` none exists.

use crate::error::FrogError;
use crate::Result;
use serde::Serialize;

/// Invariant probability measure over tooth heights `0..truncation`.
#[derive(Debug, Clone, Serialize)]
pub struct FactorMeasure {
    pub p2: f64,
    pub truncation: usize,
    /// `mass[y]` for height `y`; sums to 1.
    pub mass: Vec<f64>,
    /// `l1` residual of the balance equations against the untruncated
    /// kernel.
    pub residual_l1: f64,
}

/// Truncation tail target.
const TAIL_TARGET: f64 = 1e-12;

/// Solves the balance equations of the factor chain, truncated so the
/// discarded tail is below 1e-12, and normalizes. Fails with
/// [`FrogError::NoInvariantMeasure`] for `p2 >= 1/2`.
pub fn factor_invariant_measure(p2: f64) -> Result<FactorMeasure> {
    let h = truncation_height(p2)?;
    factor_invariant_measure_truncated(p2, h)
}

/// Same solve at an explicit truncation height (used to check truncation
/// stability).
pub fn factor_invariant_measure_truncated(p2: f64, truncation: usize) -> Result<FactorMeasure> {
    if !(p2 > 0.0 && p2 < 1.0) {
        return Err(FrogError::InvalidParameter {
            name: "p2",
            reason: format!("p2 = {p2} not in (0, 1)"),
        });
    }
    if p2 >= 0.5 {
        return Err(FrogError::NoInvariantMeasure { p2 });
    }
    if truncation < 2 {
        return Err(FrogError::InvalidParameter {
            name: "truncation",
            reason: "need at least two heights".into(),
        });
    }
    // The balance system (K^T - I) mu = 0 is tridiagonal; forward
    // substitution gives mu(y+1) = mu(y) * p2 / (1 - p2).
    let rho = p2 / (1.0 - p2);
    let mut mass = Vec::with_capacity(truncation);
    let mut m = 1.0f64;
    for _ in 0..truncation {
        mass.push(m);
        m *= rho;
    }
    let total: f64 = mass.iter().sum();
    for v in &mut mass {
        *v /= total;
    }
    // Residual against the untruncated kernel, mu extended by zero.
    let mut residual = 0.0f64;
    for y in 0..=truncation {
        let mu = |i: i64| -> f64 {
            if i >= 0 && (i as usize) < truncation {
                mass[i as usize]
            } else {
                0.0
            }
        };
        let pushed = if y == 0 {
            mu(0) * (1.0 - p2) + mu(1) * (1.0 - p2)
        } else {
            mu(y as i64 - 1) * p2 + mu(y as i64 + 1) * (1.0 - p2)
        };
        residual += (pushed - mu(y as i64)).abs();
    }
    Ok(FactorMeasure {
        p2,
        truncation,
        mass,
        residual_l1: residual,
    })
}

fn truncation_height(p2: f64) -> Result<usize> {
    if !(p2 > 0.0 && p2 < 1.0) {
        return Err(FrogError::InvalidParameter {
            name: "p2",
            reason: format!("p2 = {p2} not in (0, 1)"),
        });
    }
    if p2 >= 0.5 {
        return Err(FrogError::NoInvariantMeasure { p2 });
    }
    let rho = p2 / (1.0 - p2);
    let h = (TAIL_TARGET.ln() / rho.ln()).ceil() as usize + 2;
    Ok(h.max(8))
}
