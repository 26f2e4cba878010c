//! Numeric oracle for weighted double series
//! `sum_n a^n sum_{i <= floor(c n^(d-1))} Y_{i,n}`.

use crate::error::FrogError;
use crate::rng::RngStream;
use crate::Result;
use serde::Serialize;

/// I.i.d. law of the summands `Y_{i,n}`.
#[derive(Debug, Clone, PartialEq)]
pub enum YSampler {
    Constant {
        value: f64,
    },
    Uniform {
        hi: f64,
    },
    /// `P[log Y >= s] = min(1, theta / s)`: infinite log-moment.
    HeavyLogTail {
        theta: f64,
    },
    /// `Y = min(cap, exp(sigma Z))`, `Z` standard normal: bounded, light
    /// log-tail.
    LogNormalCapped {
        sigma: f64,
        cap: f64,
    },
}

impl YSampler {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            YSampler::Constant { value } => *value >= 0.0,
            YSampler::Uniform { hi } => *hi > 0.0,
            YSampler::HeavyLogTail { theta } => *theta > 0.0,
            YSampler::LogNormalCapped { sigma, cap } => *sigma > 0.0 && *cap > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(FrogError::InvalidParameter {
                name: "y_sampler",
                reason: format!("{self:?} has out-of-range parameters"),
            })
        }
    }

    /// Upper bound on `Y`, when one exists.
    pub fn bound(&self) -> Option<f64> {
        match self {
            YSampler::Constant { value } => Some(*value),
            YSampler::Uniform { hi } => Some(*hi),
            YSampler::HeavyLogTail { .. } => None,
            YSampler::LogNormalCapped { cap, .. } => Some(*cap),
        }
    }

    fn draw(&self, rng: &RngStream, aux: &RngStream, i: u64, n: u64) -> f64 {
        let u = rng.series_variate(i, n);
        match self {
            YSampler::Constant { value } => *value,
            YSampler::Uniform { hi } => u * hi,
            YSampler::HeavyLogTail { theta } => {
                if u <= 0.0 {
                    f64::INFINITY
                } else {
                    (theta / u).exp() // saturates to +inf for tiny u
                }
            }
            YSampler::LogNormalCapped { sigma, cap } => {
                let u2 = aux.series_variate(i, n);
                let z = (-2.0 * (1.0 - u).ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
                (sigma * z).exp().min(*cap)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Converging,
    Diverging,
    Inconclusive,
}

/// Partial sums at decade checkpoints, the geometric tail bound available
/// for bounded summands, and the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesOracleReport {
    pub a: f64,
    pub c: f64,
    pub d: u32,
    pub n_max: u64,
    /// `(n, partial sum through n)` at `n = 10^3, 10^4, ...` and at `n_max`.
    pub checkpoints: Vec<(u64, f64)>,
    pub total: f64,
    /// Exact upper bound on the remaining tail when `Y` is bounded.
    pub tail_bound: Option<f64>,
    pub verdict: Verdict,
}

/// Growth factor across the last decade that triggers a "diverging" call.
/// Heuristic: slow divergence is numerically indistinguishable at fixed
/// `n_max`.
pub const DIVERGENCE_GROWTH_FACTOR: f64 = 1.5;

/// Computes partial sums of the double series with i.i.d. draws `Y_{i,n}`
/// from per-index streams.
///
/// Verdict rules: converging when the bounded-tail estimate is below
/// `1e-9 *` the partial sum; diverging when the sum overflows or the last
/// recorded decade grew by [`DIVERGENCE_GROWTH_FACTOR`] or more; otherwise
/// inconclusive.
pub fn series_oracle(
    a: f64,
    c: f64,
    d: u32,
    y: &YSampler,
    n_max: u64,
    rng: &RngStream,
) -> Result<SeriesOracleReport> {
    if !(a > 0.0 && a < 1.0) {
        return Err(FrogError::InvalidParameter {
            name: "a",
            reason: format!("a = {a} not in (0, 1)"),
        });
    }
    if !(c > 0.0) || d == 0 {
        return Err(FrogError::InvalidParameter {
            name: "c,d",
            reason: format!("need c > 0 and d >= 1, got c = {c}, d = {d}"),
        });
    }
    y.validate()?;
    let aux = rng.derive(0x5945_5832);
    let inner_len = |n: u64| -> u64 {
        let width = c * (n as f64).powi(d as i32 - 1);
        if n == 0 && d >= 2 {
            1
        } else {
            width.floor() as u64 + 1
        }
    };
    let mut sum = 0.0f64;
    let mut a_pow = 1.0f64;
    let mut checkpoints = Vec::new();
    let mut next_checkpoint = 1000u64;
    for n in 0..=n_max {
        // Once a^n underflows to zero the term is numerically zero; skip
        // it rather than multiply 0 by a possibly infinite draw.
        if a_pow > 0.0 {
            let mut inner = 0.0f64;
            for i in 0..inner_len(n) {
                inner += y.draw(rng, &aux, i, n);
            }
            sum += a_pow * inner;
        }
        a_pow *= a;
        if n == next_checkpoint {
            checkpoints.push((n, sum));
            next_checkpoint = next_checkpoint.saturating_mul(10);
        }
    }
    if checkpoints.last().map(|(n, _)| *n) != Some(n_max) {
        checkpoints.push((n_max, sum));
    }

    let tail_bound = y.bound().map(|m| {
        let mut tail = 0.0f64;
        let mut pow = a_pow; // a^(n_max + 1)
        let mut n = n_max + 1;
        loop {
            let term = pow * inner_len(n) as f64 * m;
            tail += term;
            // Remaining tail is below term * a / (1 - a) up to the slowly
            // varying inner count; stop once that is negligible.
            if term < 1e-300 || term < tail * 1e-18 {
                break;
            }
            pow *= a;
            n += 1;
        }
        tail + a * tail / (1.0 - a) * f64::EPSILON // tiny safety margin
    });

    let verdict = decide(sum, tail_bound, &checkpoints);
    Ok(SeriesOracleReport {
        a,
        c,
        d,
        n_max,
        checkpoints,
        total: sum,
        tail_bound,
        verdict,
    })
}

fn decide(total: f64, tail_bound: Option<f64>, checkpoints: &[(u64, f64)]) -> Verdict {
    if let Some(tail) = tail_bound {
        if tail <= 1e-9 * total || (tail == 0.0 && total == 0.0) {
            return Verdict::Converging;
        }
    }
    if total.is_infinite() || total.is_nan() {
        return Verdict::Diverging;
    }
    if checkpoints.len() >= 2 {
        let (_, s_prev) = checkpoints[checkpoints.len() - 2];
        let (_, s_last) = checkpoints[checkpoints.len() - 1];
        if s_prev > 0.0 && s_last / s_prev >= DIVERGENCE_GROWTH_FACTOR {
            return Verdict::Diverging;
        }
    }
    Verdict::Inconclusive
}
