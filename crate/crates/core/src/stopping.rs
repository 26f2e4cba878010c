//! Per-frog stopping times.

use crate::counts::FrogCounts;
use crate::error::FrogError;
use crate::rng::RngStream;
use crate::site::Site;
use crate::Result;
use std::collections::HashMap;

/// Stopping times `T(site, frog index)`; a missing entry means "never
/// stopped". Extra frogs (index 0) are never stopped.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StopTimes {
    times: HashMap<(Site, u64), u32>,
}

impl StopTimes {
    /// `T` identically infinite.
    pub fn unstopped() -> Self {
        StopTimes::default()
    }

    /// The same finite stopping time for every configured frog.
    pub fn constant(counts: &FrogCounts, t: u32) -> Self {
        let mut times = HashMap::new();
        for (site, n) in counts.support() {
            for i in 1..=n {
                times.insert((*site, i), t);
            }
        }
        StopTimes { times }
    }

    pub fn set(&mut self, site: Site, index: u64, t: u32) {
        self.times.insert((site, index), t);
    }

    /// Stopping time of frog `(site, index)`; `None` means infinity.
    pub fn get(&self, site: &Site, index: u64) -> Option<u32> {
        self.times.get(&(*site, index)).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }
}

/// Scan limit: `P[T > 2^20]` is negligible for any `2 d eps < 1`.
const SCAN_LIMIT: u32 = 1 << 20;

/// Samples `T(x, i) = inf { j >= 0 : U_j(x, i) >= 2 d eps }` for every
/// configured frog, where `U_j(x, i)` is the same variate stream that drives
/// the frog's trajectory steps. The times are geometric with success
/// parameter `1 - 2 d eps`, and when `eps = 1/(2d)` every time is infinite.
///
/// Because the stream is shared with the step sampler, stopping an
/// elliptic-drift trajectory at `T` freezes it exactly before its first
/// non-forced step.
pub fn sample_stop_times(
    counts: &FrogCounts,
    eps: f64,
    dim: usize,
    rng: &RngStream,
) -> Result<StopTimes> {
    let forced = 2.0 * dim as f64 * eps;
    if !(forced > 0.0) || forced > 1.0 + 1e-12 {
        return Err(FrogError::InvalidParameter {
            name: "eps",
            reason: format!("2 d eps = {forced} not in (0, 1]"),
        });
    }
    if counts.total() > (u32::MAX as u128) {
        return Err(FrogError::TooManyFrogs {
            total: counts.total(),
            limit: u32::MAX as u64,
        });
    }
    let mut times = StopTimes::default();
    if forced >= 1.0 {
        return Ok(times); // T is identically infinite.
    }
    for (site, n) in counts.support() {
        for i in 1..=n {
            let key = rng.frog_key(site, i);
            let mut j = 0u32;
            loop {
                if key.variate(j) >= forced {
                    times.set(*site, i, j);
                    break;
                }
                j += 1;
                if j >= SCAN_LIMIT {
                    break; // astronomically unlikely; treat as infinite
                }
            }
        }
    }
    Ok(times)
}
