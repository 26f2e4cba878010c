//! The activation wavefront: exact recursion and an incremental runner.
//!
//! `wavefront_step` is the reference implementation: it extends a trace by
//! one time unit, recomputing every frog position from the trajectory source.
//! `run_activation` produces identical traces but carries per-frog state
//! across steps, which is what makes box-scale simulations affordable. A
//! property test pins the two against each other.

use crate::config::FrogConfig;
use crate::error::FrogError;
use crate::site::{Site, MAX_DIM};
use crate::trace::ActivationTrace;
use crate::window::Window;
use crate::Result;
use std::collections::{BTreeSet, HashSet};

/// Hard ceiling on the number of awake frogs a run may enumerate.
/// Heavy-tailed count laws must be capped (see `FrogCounts::capped`) to
/// stay below it.
pub const ENGINE_FROG_LIMIT: u64 = 30_000_000;

/// Indices awake at `site` when it is activated at time `k`.
fn awake_indices(config: &FrogConfig, trace: &ActivationTrace, site: &Site, k: u32) -> Vec<u64> {
    let n = config.count(site);
    if k == 0 && site == trace.origin() {
        if let Some(subset) = trace.active_subset() {
            return subset
                .iter()
                .copied()
                .filter(|i| *i >= 1 && *i <= n)
                .collect();
        }
    }
    (1..=n).collect()
}

/// Fresh trace at horizon 0: `W_0 = {v}` (even when `v` holds no frogs),
/// with time-0 first hits recorded for the awake frogs at `v`.
pub fn start_trace(
    config: &FrogConfig,
    v: &Site,
    targets: &BTreeSet<Site>,
    active_subset: Option<&BTreeSet<u64>>,
) -> Result<ActivationTrace> {
    if let Some(subset) = active_subset {
        let n = config.count(v);
        if let Some(bad) = subset.iter().find(|i| **i < 1 || **i > n) {
            return Err(FrogError::InvalidParameter {
                name: "active_subset",
                reason: format!("index {bad} outside 1..={n} at origin {v}"),
            });
        }
    }
    let mut trace = ActivationTrace::new(*v, targets.clone(), active_subset.cloned());
    if targets.contains(v) {
        for i in awake_indices(config, &trace, v, 0) {
            trace.record_first_hit(*v, *v, i, 0);
        }
    }
    Ok(trace)
}

/// Extends `trace` from horizon `J` to `J + 1`.
///
/// The new wave `W_{J+1}` is exactly the set of sites outside
/// `W_0, ..., W_J` reached at time `J + 1 - k` by some awake frog
/// `i <= n(y)`, `y` in `W_k`. First hits on registered targets are logged
/// for moved frogs and for the frogs woken by the new wave.
pub fn wavefront_step(config: &FrogConfig, mut trace: ActivationTrace) -> Result<ActivationTrace> {
    let t = trace.horizon() + 1;
    check_enumerable(config, &trace)?;
    let visited: HashSet<Site> = trace.waves().iter().flatten().copied().collect();
    let mut candidates: Vec<Site> = Vec::new();
    let mut hits: Vec<(Site, Site, u64)> = Vec::new();
    for k in 0..t {
        for y in trace.wave(k).to_vec() {
            for i in awake_indices(config, &trace, &y, k) {
                let pos = config.position(&y, i, t - k)?;
                if trace.targets().contains(&pos) {
                    hits.push((pos, y, i));
                }
                if !visited.contains(&pos) {
                    candidates.push(pos);
                }
            }
        }
    }
    for (target, origin, index) in hits {
        trace.record_first_hit(target, origin, index, t);
    }
    candidates.sort_unstable();
    candidates.dedup();
    let wave = candidates;
    for x in &wave {
        for i in awake_indices(config, &trace, x, t) {
            if trace.targets().contains(x) {
                trace.record_first_hit(*x, *x, i, t);
            }
        }
    }
    trace.push_wave(wave);
    Ok(trace)
}

/// Runs the activation cascade from `v` for `horizon` steps.
///
/// When `active_subset` is given, only those indices at `v` are awake at
/// time 0; the remaining frogs at `v` stay asleep forever (the origin can
/// never be first-visited again). First hits are recorded for every target,
/// per `(origin site, frog index)`, at absolute times up to the horizon.
pub fn run_activation(
    config: &FrogConfig,
    v: &Site,
    horizon: u32,
    targets: &BTreeSet<Site>,
    active_subset: Option<&BTreeSet<u64>>,
) -> Result<ActivationTrace> {
    let mut trace = start_trace(config, v, targets, active_subset)?;
    let source = config.source();
    let fast = source.fast_stepper();
    let target_list: Vec<Site> = targets.iter().copied().collect();

    let mut visited = VisitedSet::new(config.counts().window(), v, horizon);
    visited.insert(*v);

    struct Frog {
        origin: Site,
        index: u64,
        key: crate::rng::FrogKey,
        wake: u32,
        pos: Site,
        hit_mask: u32,
    }

    let mut frogs: Vec<Frog> = Vec::new();
    let mut total_frogs: u64 = 0;

    let wake = |site: &Site,
                time: u32,
                indices: Vec<u64>,
                frogs: &mut Vec<Frog>,
                trace: &mut ActivationTrace,
                total: &mut u64|
     -> Result<()> {
        *total += indices.len() as u64;
        if *total > ENGINE_FROG_LIMIT {
            return Err(FrogError::TooManyFrogs {
                total: *total as u128,
                limit: ENGINE_FROG_LIMIT,
            });
        }
        let target_idx = target_list.iter().position(|t| t == site);
        for i in indices {
            let mut hit_mask = 0u32;
            if let Some(ti) = target_idx {
                trace.record_first_hit(*site, *site, i, time);
                if ti < 32 {
                    hit_mask |= 1 << ti;
                }
            }
            let key = match fast {
                Some((_, rng)) => rng.frog_key(site, i),
                None => crate::rng::FrogKey(0),
            };
            frogs.push(Frog {
                origin: *site,
                index: i,
                key,
                wake: time,
                pos: *site,
                hit_mask,
            });
        }
        Ok(())
    };

    wake(
        v,
        0,
        awake_indices(config, &trace, v, 0),
        &mut frogs,
        &mut trace,
        &mut total_frogs,
    )?;

    let mut candidates: Vec<Site> = Vec::new();
    for t in 1..=horizon {
        candidates.clear();
        for f in frogs.iter_mut() {
            let step = t - 1 - f.wake;
            let next = match fast {
                Some((kernel, _)) => kernel.step(&f.pos, f.key.variate(step))?,
                None => source.advance(&f.origin, f.index, step, &f.pos)?,
            };
            f.pos = next;
            if !target_list.is_empty() {
                if let Some(ti) = target_list.iter().position(|x| *x == next) {
                    if ti >= 32 || f.hit_mask & (1 << ti) == 0 {
                        trace.record_first_hit(next, f.origin, f.index, t);
                        if ti < 32 {
                            f.hit_mask |= 1 << ti;
                        }
                    }
                }
            }
            if !visited.contains(&next) {
                candidates.push(next);
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        let wave: Vec<Site> = std::mem::take(&mut candidates);
        for x in &wave {
            visited.insert(*x);
        }
        for x in &wave {
            let indices = awake_indices(config, &trace, x, t);
            if !indices.is_empty() {
                wake(x, t, indices, &mut frogs, &mut trace, &mut total_frogs)?;
            }
        }
        trace.push_wave(wave);
    }
    Ok(trace)
}

fn check_enumerable(config: &FrogConfig, trace: &ActivationTrace) -> Result<()> {
    let mut total: u128 = 0;
    for wave in trace.waves() {
        for y in wave {
            total += config.count(y) as u128;
        }
    }
    if total > ENGINE_FROG_LIMIT as u128 {
        return Err(FrogError::TooManyFrogs {
            total,
            limit: ENGINE_FROG_LIMIT,
        });
    }
    Ok(())
}

/// First-visit membership structure: a dense bitmap over the box reachable
/// by unit steps within the horizon, with a hash-set overflow for sources
/// that jump farther.
struct VisitedSet {
    kind: VisitedKind,
    overflow: HashSet<Site>,
}

enum VisitedKind {
    DenseLattice {
        dim: usize,
        lo: [i64; MAX_DIM],
        size: [usize; MAX_DIM],
        bits: Vec<u64>,
    },
    DenseComb {
        lo_x: i64,
        size_x: usize,
        size_y: usize,
        bits: Vec<u64>,
    },
    HashOnly,
}

/// Bitmaps larger than this fall back to hashing (2^28 bits = 32 MiB).
const DENSE_BIT_LIMIT: u128 = 1 << 28;

impl VisitedSet {
    fn new(window: &Window, v: &Site, horizon: u32) -> Self {
        let (mut lo, mut hi) = window.bounding_box();
        let pad = horizon as i64 + 1;
        let kind = match v {
            Site::Lattice { dim, coords } => {
                let dim = *dim as usize;
                let mut volume: u128 = 1;
                let mut size = [1usize; MAX_DIM];
                for k in 0..dim {
                    lo[k] = lo[k].min(coords[k]) - pad;
                    hi[k] = hi[k].max(coords[k]) + pad;
                    size[k] = (hi[k] - lo[k] + 1) as usize;
                    volume = volume.saturating_mul(size[k] as u128);
                }
                if volume <= DENSE_BIT_LIMIT {
                    VisitedKind::DenseLattice {
                        dim,
                        lo,
                        size,
                        bits: vec![0u64; (volume as usize).div_ceil(64)],
                    }
                } else {
                    VisitedKind::HashOnly
                }
            }
            Site::Comb { x, y } => {
                let lo_x = lo[0].min(*x) - pad;
                let hi_x = hi[0].max(*x) + pad;
                let hi_y = hi[1].max(*y) + pad;
                let size_x = (hi_x - lo_x + 1) as usize;
                let size_y = (hi_y + 1) as usize;
                let volume = size_x as u128 * size_y as u128;
                if volume <= DENSE_BIT_LIMIT {
                    VisitedKind::DenseComb {
                        lo_x,
                        size_x,
                        size_y,
                        bits: vec![0u64; (volume as usize).div_ceil(64)],
                    }
                } else {
                    VisitedKind::HashOnly
                }
            }
        };
        VisitedSet {
            kind,
            overflow: HashSet::new(),
        }
    }

    #[inline]
    fn dense_index(&self, site: &Site) -> Option<usize> {
        match (&self.kind, site) {
            (
                VisitedKind::DenseLattice { dim, lo, size, .. },
                Site::Lattice { dim: sd, coords },
            ) if *sd as usize == *dim => {
                let mut idx = 0usize;
                for k in 0..*dim {
                    let off = coords[k] - lo[k];
                    if off < 0 || off >= size[k] as i64 {
                        return None;
                    }
                    idx = idx * size[k] + off as usize;
                }
                Some(idx)
            }
            (
                VisitedKind::DenseComb {
                    lo_x,
                    size_x,
                    size_y,
                    ..
                },
                Site::Comb { x, y },
            ) => {
                let ox = x - lo_x;
                if ox < 0 || ox >= *size_x as i64 || *y < 0 || *y >= *size_y as i64 {
                    return None;
                }
                Some(ox as usize * size_y + *y as usize)
            }
            _ => None,
        }
    }

    #[inline]
    fn contains(&self, site: &Site) -> bool {
        match self.dense_index(site) {
            Some(idx) => {
                let bits = match &self.kind {
                    VisitedKind::DenseLattice { bits, .. } => bits,
                    VisitedKind::DenseComb { bits, .. } => bits,
                    VisitedKind::HashOnly => unreachable!(),
                };
                bits[idx / 64] & (1u64 << (idx % 64)) != 0
            }
            None => self.overflow.contains(site),
        }
    }

    #[inline]
    fn insert(&mut self, site: Site) {
        match self.dense_index(&site) {
            Some(idx) => {
                let bits = match &mut self.kind {
                    VisitedKind::DenseLattice { bits, .. } => bits,
                    VisitedKind::DenseComb { bits, .. } => bits,
                    VisitedKind::HashOnly => unreachable!(),
                };
                bits[idx / 64] |= 1u64 << (idx % 64);
            }
            None => {
                self.overflow.insert(site);
            }
        }
    }
}
