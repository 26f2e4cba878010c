//! Frog configurations and the surgeries performed on them.
//!
//! A configuration pairs frog counts with a trajectory source. All surgeries
//! (stopping, adding or swapping in the extra frog) build new configurations
//! that share the underlying source, so comparisons between a configuration
//! and its surgered variants run on literally the same trajectories.

use crate::counts::FrogCounts;
use crate::error::FrogError;
use crate::site::Site;
use crate::sources::{BudgetSource, TrajectorySource};
use crate::stopping::StopTimes;
use crate::Result;
use std::sync::Arc;

/// Frog counts plus trajectories; immutable and cheap to clone.
#[derive(Clone)]
pub struct FrogConfig {
    counts: FrogCounts,
    source: Arc<dyn TrajectorySource>,
}

impl std::fmt::Debug for FrogConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FrogConfig")
            .field("counts", &self.counts)
            .finish_non_exhaustive()
    }
}

impl FrogConfig {
    pub fn new(counts: FrogCounts, source: Arc<dyn TrajectorySource>) -> Self {
        FrogConfig { counts, source }
    }

    pub fn counts(&self) -> &FrogCounts {
        &self.counts
    }

    pub fn source(&self) -> Arc<dyn TrajectorySource> {
        Arc::clone(&self.source)
    }

    /// Number of initial frogs at `site`.
    pub fn count(&self, site: &Site) -> u64 {
        self.counts.count(site)
    }

    /// `S_j(x, i)`.
    pub fn position(&self, x: &Site, i: u64, j: u32) -> Result<Site> {
        self.source.position(x, i, j)
    }

    /// Same counts, trajectories restricted to `|pos|_1 <= max_l1`; queries
    /// beyond fail with a window-exhausted error.
    pub fn with_budget(&self, max_l1: u64) -> Self {
        FrogConfig {
            counts: self.counts.clone(),
            source: BudgetSource::new(Arc::clone(&self.source), max_l1),
        }
    }

    /// Same trajectories, counts clamped to `cap` per site.
    pub fn with_count_cap(&self, cap: u64) -> Self {
        FrogConfig {
            counts: self.counts.capped(cap),
            source: Arc::clone(&self.source),
        }
    }

    /// Copy with one count changed; trajectories for the new indices are
    /// already defined by the source.
    pub fn with_count(&self, site: Site, n: u64) -> Result<Self> {
        Ok(FrogConfig {
            counts: self.counts.with_count(site, n)?,
            source: Arc::clone(&self.source),
        })
    }
}

struct StoppedSource {
    inner: Arc<dyn TrajectorySource>,
    times: StopTimes,
}

impl TrajectorySource for StoppedSource {
    fn advance(&self, origin: &Site, index: u64, step: u32, pos: &Site) -> Result<Site> {
        if index >= 1 {
            if let Some(t) = self.times.get(origin, index) {
                if step >= t {
                    return Ok(*pos);
                }
            }
        }
        self.inner.advance(origin, index, step, pos)
    }

    fn position(&self, origin: &Site, index: u64, step: u32) -> Result<Site> {
        let effective = if index >= 1 {
            match self.times.get(origin, index) {
                Some(t) => step.min(t),
                None => step,
            }
        } else {
            step
        };
        self.inner.position(origin, index, effective)
    }
}

/// Freezes every initial frog `(x, i)` at its stopping time:
/// `S'_j(x, i) = S_{min(j, T(x, i))}(x, i)`. Extra frogs are unaffected.
pub fn stop_config(config: &FrogConfig, times: StopTimes) -> FrogConfig {
    FrogConfig {
        counts: config.counts.clone(),
        source: Arc::new(StoppedSource {
            inner: config.source(),
            times,
        }),
    }
}

struct AddExtraSource {
    inner: Arc<dyn TrajectorySource>,
    v: Site,
}

impl TrajectorySource for AddExtraSource {
    fn advance(&self, origin: &Site, index: u64, step: u32, pos: &Site) -> Result<Site> {
        if *origin == self.v && index >= 1 {
            self.inner.advance(origin, index - 1, step, pos)
        } else {
            self.inner.advance(origin, index, step, pos)
        }
    }

    fn position(&self, origin: &Site, index: u64, step: u32) -> Result<Site> {
        if *origin == self.v && index >= 1 {
            self.inner.position(origin, index - 1, step)
        } else {
            self.inner.position(origin, index, step)
        }
    }
}

/// Adds the extra frog at `v` to the initial frogs: the count at `v` grows
/// by one, the former extra frog becomes frog 1 there, and former indices
/// shift up by one. Everything else is unchanged.
pub fn add_extra_frog(config: &FrogConfig, v: &Site) -> Result<FrogConfig> {
    let n = config.count(v);
    let counts = config.counts.with_count(*v, n + 1)?;
    Ok(FrogConfig {
        counts,
        source: Arc::new(AddExtraSource {
            inner: config.source(),
            v: *v,
        }),
    })
}

struct SwapExtraSource {
    inner: Arc<dyn TrajectorySource>,
    v: Site,
}

impl TrajectorySource for SwapExtraSource {
    fn advance(&self, origin: &Site, index: u64, step: u32, pos: &Site) -> Result<Site> {
        let index = if *origin == self.v && index == 1 {
            0
        } else {
            index
        };
        self.inner.advance(origin, index, step, pos)
    }

    fn position(&self, origin: &Site, index: u64, step: u32) -> Result<Site> {
        let index = if *origin == self.v && index == 1 {
            0
        } else {
            index
        };
        self.inner.position(origin, index, step)
    }
}

/// Replaces the trajectory of the first frog at `v` by the extra frog's;
/// counts and all other indices are unchanged. Requires at least one frog
/// at `v`.
pub fn swap_in_extra_frog(config: &FrogConfig, v: &Site) -> Result<FrogConfig> {
    if config.count(v) == 0 {
        return Err(FrogError::NoFrogToSwap { site: *v });
    }
    Ok(FrogConfig {
        counts: config.counts.clone(),
        source: Arc::new(SwapExtraSource {
            inner: config.source(),
            v: *v,
        }),
    })
}
