//! Oracle comparisons: the engine against independent implementations of
//! the defining recursions.

mod common;

use common::{oracle_distinct_visitors, oracle_waves, random_small_config};
use frogsim::counts::FrogCounts;
use frogsim::kernel::{elliptic_drift_kernel, ResidualLaw};
use frogsim::rng::RngStream;
use frogsim::sources::{make_sampler, TableSource};
use frogsim::window::Window;
use frogsim::{run_activation, FrogConfig, Site};
use std::collections::{BTreeMap, BTreeSet};

#[test]
fn seven_site_path_matches_chain_enumeration() {
    // Random configurations on a 7-site path with 3 frogs, horizon 5.
    for seed in 0..40u64 {
        let window = Window::centered_box(1, 3);
        let rng = RngStream::new(seed);
        let mut entries = BTreeMap::new();
        let sites = window.sites();
        // Exactly three frogs spread over the path.
        let mut remaining = 3u64;
        for (k, s) in sites.iter().enumerate() {
            if remaining == 0 {
                break;
            }
            let u = rng.series_variate(k as u64, seed);
            if u < 0.4 {
                entries.insert(*s, 1);
                remaining -= 1;
            }
        }
        entries
            .entry(Site::lattice(&[0]))
            .or_insert(remaining.max(1));
        let counts = FrogCounts::new(window, entries).unwrap();
        let kernel = elliptic_drift_kernel(1, 0.3, ResidualLaw::UniformUnit).unwrap();
        let config = FrogConfig::new(counts, make_sampler(kernel, RngStream::new(seed)));
        let v = Site::lattice(&[0]);
        let horizon = 5;
        let trace = run_activation(&config, &v, horizon, &BTreeSet::new(), None).unwrap();
        let oracle = oracle_waves(&config, &v, horizon);
        for j in 0..=horizon {
            let engine: BTreeSet<Site> = trace.wave(j).iter().copied().collect();
            assert_eq!(engine, oracle[j as usize], "seed {seed}, wave {j}");
        }
    }
}

#[test]
fn random_small_configs_match_wave_oracle() {
    for seed in 0..30u64 {
        let (config, v, horizon, _, _) = random_small_config(seed);
        let trace = run_activation(&config, &v, horizon, &BTreeSet::new(), None).unwrap();
        let oracle = oracle_waves(&config, &v, horizon);
        for j in 0..=horizon {
            let engine: BTreeSet<Site> = trace.wave(j).iter().copied().collect();
            assert_eq!(engine, oracle[j as usize], "seed {seed}, wave {j}");
        }
    }
}

#[test]
fn drifted_line_distinct_visitors_match_replay() {
    // One frog per site on [-20, 20], rightward drift, horizon 200.
    let window = Window::centered_box(1, 20);
    let counts = FrogCounts::constant(window, 1);
    let kernel = elliptic_drift_kernel(1, 0.3, ResidualLaw::PlusFirstAxis).unwrap();
    for seed in [7u64, 8, 9] {
        let config = FrogConfig::new(
            counts.clone(),
            make_sampler(kernel.clone(), RngStream::new(seed)),
        );
        let v = Site::lattice(&[0]);
        let horizon = 200;
        let trace = run_activation(&config, &v, horizon, &BTreeSet::from([v]), None).unwrap();
        let expected = oracle_distinct_visitors(&config, &v, horizon, &v);
        assert_eq!(trace.distinct_visiting_origins(&v), expected, "seed {seed}");
    }
}

#[test]
fn subset_activation_on_hand_built_config() {
    // Five sites; the origin holds two frogs with opposite sweeps. The
    // single-index run must see a subset of the full run's visitors.
    let v = Site::lattice(&[0]);
    let mut table = TableSource::new();
    let path = |xs: &[i64]| xs.iter().map(|x| Site::lattice(&[*x])).collect::<Vec<_>>();
    table.insert(v, 1, path(&[0, 1, 2, 1, 0, 1])).unwrap();
    table.insert(v, 2, path(&[0, -1, -2, -1, 0, -1])).unwrap();
    let a = Site::lattice(&[1]);
    let b = Site::lattice(&[-1]);
    table.insert(a, 1, path(&[1, 0, 1, 0, 1, 0])).unwrap();
    table.insert(b, 1, path(&[-1, 0, -1, 0, -1, 0])).unwrap();
    let window = Window::centered_box(1, 2);
    let mut entries = BTreeMap::new();
    entries.insert(v, 2u64);
    entries.insert(a, 1);
    entries.insert(b, 1);
    let counts = FrogCounts::new(window, entries).unwrap();
    let config = FrogConfig::new(counts, table.into_source());
    let targets = BTreeSet::from([v]);

    let full = run_activation(&config, &v, 5, &targets, None).unwrap();
    for subset in [[1u64], [2u64]] {
        let sub = BTreeSet::from(subset);
        let partial = run_activation(&config, &v, 5, &targets, Some(&sub)).unwrap();
        let full_visitors: BTreeSet<_> = full.visitor_triples(&v).into_iter().collect();
        for triple in partial.visitor_triples(&v) {
            assert!(
                full_visitors.contains(&triple),
                "visitor {triple:?} of subset run missing from full run"
            );
        }
        assert!(partial.visited().is_subset(&full.visited()));
    }
}
