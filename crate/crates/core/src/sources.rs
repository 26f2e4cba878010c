//! Trajectory sources: pure functions `(origin, frog index, step) -> site`.
//!
//! A source answers both incremental queries (`advance`: one step given the
//! current position) and absolute queries (`position`: walk from step 0).
//! Sources are pure — repeated queries return identical values — so
//! trajectories need no shared mutable cache and are safe to query from any
//! number of threads in any order.

use crate::error::FrogError;
use crate::kernel::Kernel;
use crate::rng::RngStream;
use crate::site::Site;
use crate::Result;
use std::collections::HashMap;
use std::sync::Arc;

/// A collection of frog trajectories `S_j(x, i)` with `S_0(x, i) = x`.
/// Index `i == 0` is reserved for the extra frog at each site.
pub trait TrajectorySource: Send + Sync {
    /// `S_{j+1}(origin, index)` given `S_j(origin, index) = pos`.
    fn advance(&self, origin: &Site, index: u64, step: u32, pos: &Site) -> Result<Site>;

    /// `S_step(origin, index)`, computed by iterating `advance` from the
    /// origin.
    fn position(&self, origin: &Site, index: u64, step: u32) -> Result<Site> {
        let mut pos = *origin;
        for j in 0..step {
            pos = self.advance(origin, index, j, &pos)?;
        }
        Ok(pos)
    }

    /// Fast-path handle for sources whose steps are a pure function of
    /// `(per-frog key, step, position)`: lets callers premix one key per
    /// frog instead of rehashing the origin on every step. Produces
    /// bit-identical trajectories to `advance`. Wrappers leave this `None`.
    fn fast_stepper(&self) -> Option<(&Kernel, &RngStream)> {
        None
    }
}

/// Markov steps drawn from a kernel with counter-based variates: step `j` of
/// frog `(x, i)` consumes the uniform variate keyed by `(seed, x, i, j)`.
/// The extra-frog stream (`i == 0`) is disjoint from all others.
#[derive(Debug, Clone)]
pub struct KernelSampler {
    kernel: Kernel,
    rng: RngStream,
}

impl KernelSampler {
    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn rng(&self) -> &RngStream {
        &self.rng
    }
}

/// Builds the trajectory source for a kernel: `(x, i, j) -> S_j(x, i)` with
/// `S_0 = x` and each step drawn from the kernel at the current site.
pub fn make_sampler(kernel: Kernel, rng: RngStream) -> Arc<KernelSampler> {
    Arc::new(KernelSampler { kernel, rng })
}

impl TrajectorySource for KernelSampler {
    #[inline]
    fn advance(&self, origin: &Site, index: u64, step: u32, pos: &Site) -> Result<Site> {
        let u = self.rng.frog_key(origin, index).variate(step);
        self.kernel.step(pos, u)
    }

    fn fast_stepper(&self) -> Option<(&Kernel, &RngStream)> {
        Some((&self.kernel, &self.rng))
    }
}

/// Trajectories given by an explicit function (used for hand-built
/// configurations). The function must satisfy `f(x, i, 0) = x`.
pub struct FnSource<F>
where
    F: Fn(&Site, u64, u32) -> Site + Send + Sync,
{
    f: F,
}

impl<F> FnSource<F>
where
    F: Fn(&Site, u64, u32) -> Site + Send + Sync,
{
    pub fn new(f: F) -> Arc<Self> {
        Arc::new(FnSource { f })
    }
}

impl<F> TrajectorySource for FnSource<F>
where
    F: Fn(&Site, u64, u32) -> Site + Send + Sync,
{
    fn advance(&self, origin: &Site, index: u64, step: u32, _pos: &Site) -> Result<Site> {
        Ok((self.f)(origin, index, step + 1))
    }

    fn position(&self, origin: &Site, index: u64, step: u32) -> Result<Site> {
        let pos = (self.f)(origin, index, step);
        debug_assert!(
            step > 0 || pos == *origin,
            "trajectory must start at its origin"
        );
        Ok(pos)
    }
}

/// Trajectories from an explicit finite table. Queries past the stored
/// prefix fail with a window-budget error.
#[derive(Debug, Clone, Default)]
pub struct TableSource {
    paths: HashMap<(Site, u64), Vec<Site>>,
}

impl TableSource {
    pub fn new() -> Self {
        TableSource::default()
    }

    /// Registers a path for frog `(origin, index)`; the path must start at
    /// the origin.
    pub fn insert(&mut self, origin: Site, index: u64, path: Vec<Site>) -> crate::Result<()> {
        if path.first() != Some(&origin) {
            return Err(FrogError::InvalidParameter {
                name: "path",
                reason: format!("path for {origin} must start at the origin"),
            });
        }
        self.paths.insert((origin, index), path);
        Ok(())
    }

    pub fn into_source(self) -> Arc<Self> {
        Arc::new(self)
    }
}

impl TrajectorySource for TableSource {
    fn advance(&self, origin: &Site, index: u64, step: u32, _pos: &Site) -> Result<Site> {
        self.position(origin, index, step + 1)
    }

    fn position(&self, origin: &Site, index: u64, step: u32) -> Result<Site> {
        match self.paths.get(&(*origin, index)) {
            Some(path) => path
                .get(step as usize)
                .copied()
                .ok_or(FrogError::TrajectoryUndefined {
                    origin: *origin,
                    frog: index,
                    step,
                }),
            None => {
                if step == 0 {
                    Ok(*origin)
                } else {
                    Err(FrogError::TrajectoryUndefined {
                        origin: *origin,
                        frog: index,
                        step,
                    })
                }
            }
        }
    }
}

/// Wrapper enforcing a window budget: any position with `l1` norm beyond the
/// budget fails with [`FrogError::WindowExhausted`] carrying the offending
/// site.
pub struct BudgetSource {
    inner: Arc<dyn TrajectorySource>,
    max_l1: u64,
}

impl BudgetSource {
    pub fn new(inner: Arc<dyn TrajectorySource>, max_l1: u64) -> Arc<Self> {
        Arc::new(BudgetSource { inner, max_l1 })
    }
}

impl TrajectorySource for BudgetSource {
    fn advance(&self, origin: &Site, index: u64, step: u32, pos: &Site) -> Result<Site> {
        let next = self.inner.advance(origin, index, step, pos)?;
        if next.l1_norm() > self.max_l1 {
            Err(FrogError::WindowExhausted { site: next })
        } else {
            Ok(next)
        }
    }
}
