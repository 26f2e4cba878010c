//! Shared helpers for integration tests: random small configurations and
//! independent oracles. The oracles are deliberately written straight from
//! the defining recursions, using only `FrogConfig::position`, so they share
//! no code with the engine they check.
#![allow(dead_code)] // each test target uses a different subset

use frogsim::counts::FrogCounts;
use frogsim::kernel::{elliptic_drift_kernel, ResidualLaw};
use frogsim::rng::{mix64, RngStream};
use frogsim::sources::make_sampler;
use frogsim::window::Window;
use frogsim::{FrogConfig, Site};
use std::collections::{BTreeMap, BTreeSet};

/// Deterministic "random" integers driven by a mix64 chain.
pub struct TestRng(pub u64);

impl TestRng {
    pub fn next(&mut self) -> u64 {
        self.0 = mix64(self.0.wrapping_add(0x9e37_79b9_7f4a_7c15));
        self.0
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// A small random kernel-sampled configuration: d in {1, 2}, at most 30
/// window sites, counts 0..=3 per site.
pub fn random_small_config(seed: u64) -> (FrogConfig, Site, u32, usize, f64) {
    let mut r = TestRng(mix64(seed ^ 0x5eed));
    let dim = 1 + (r.below(2) as usize);
    let window = if dim == 1 {
        Window::centered_box(1, 3 + r.below(10) as i64) // 7..=25 sites
    } else {
        Window::L1Ball {
            dim: 2,
            radius: 2 + r.below(2) as u32, // 13 or 25 sites
        }
    };
    let eps_choices_1d = [0.1, 0.2, 0.3, 0.5];
    let eps_choices_2d = [0.05, 0.1, 0.2, 0.25];
    let eps = if dim == 1 {
        eps_choices_1d[r.below(4) as usize]
    } else {
        eps_choices_2d[r.below(4) as usize]
    };
    let residual = match r.below(3) {
        0 => ResidualLaw::Stay,
        1 => ResidualLaw::PlusFirstAxis,
        _ => ResidualLaw::UniformUnit,
    };
    let kernel = elliptic_drift_kernel(dim, eps, residual).unwrap();
    let source = make_sampler(kernel, RngStream::new(mix64(seed ^ 0xf00d)));
    let sites = window.sites();
    let mut entries = BTreeMap::new();
    for s in &sites {
        let n = r.below(4);
        if n > 0 {
            entries.insert(*s, n);
        }
    }
    let v = sites[r.below(sites.len() as u64) as usize];
    let horizon = 3 + r.below(8) as u32; // 3..=10
    let counts = FrogCounts::new(window, entries).unwrap();
    (FrogConfig::new(counts, source), v, horizon, dim, eps)
}

/// Independent wavefront oracle: evaluates the defining set recursion
/// directly, querying absolute positions only.
pub fn oracle_waves(config: &FrogConfig, v: &Site, horizon: u32) -> Vec<BTreeSet<Site>> {
    let mut waves: Vec<BTreeSet<Site>> = vec![BTreeSet::from([*v])];
    for j in 1..=horizon {
        let mut seen: BTreeSet<Site> = BTreeSet::new();
        for w in &waves {
            seen.extend(w.iter().copied());
        }
        let mut wave = BTreeSet::new();
        for (k, wk) in waves.iter().enumerate() {
            for y in wk {
                for i in 1..=config.count(y) {
                    let pos = config.position(y, i, j - k as u32).unwrap();
                    if !seen.contains(&pos) {
                        wave.insert(pos);
                    }
                }
            }
        }
        waves.push(wave);
    }
    waves
}

/// Independent distinct-visitor oracle: replays every activated frog's path
/// and counts origins (other than the target) that ever stand on the target
/// within the horizon.
pub fn oracle_distinct_visitors(config: &FrogConfig, v: &Site, horizon: u32, target: &Site) -> u64 {
    let waves = oracle_waves(config, v, horizon);
    let mut origins = BTreeSet::new();
    for (k, wave) in waves.iter().enumerate() {
        for y in wave {
            if y == target {
                continue;
            }
            'frogs: for i in 1..=config.count(y) {
                for j in 0..=(horizon - k as u32) {
                    if config.position(y, i, j).unwrap() == *target {
                        origins.insert(*y);
                        break 'frogs;
                    }
                }
            }
        }
    }
    origins.len() as u64
}

pub fn median(mut values: Vec<u64>) -> f64 {
    values.sort_unstable();
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2] as f64
    } else {
        (values[n / 2 - 1] + values[n / 2]) as f64 / 2.0
    }
}
