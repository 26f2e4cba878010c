//! Activation traces: the wavefront history of one run.

use crate::site::Site;
use std::collections::{BTreeMap, BTreeSet};

/// The disjoint wavefront sets `W_0, ..., W_J`, plus the log of first hits
/// on a set of target sites.
///
/// `W_0 = {origin}` always, even when the origin holds no frogs (the trace
/// then stays `{origin}` forever). `W_{j}` for `j >= 1` is the set of sites
/// first reached at time `j` by an active frog.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivationTrace {
    origin: Site,
    targets: BTreeSet<Site>,
    active_subset: Option<BTreeSet<u64>>,
    /// `waves[j]` is `W_j`, sorted ascending.
    waves: Vec<Vec<Site>>,
    /// `visitors[target][(origin, index)]` = first time that frog stood on
    /// the target (absolute time, bounded by the horizon).
    visitors: BTreeMap<Site, BTreeMap<(Site, u64), u32>>,
}

impl ActivationTrace {
    pub(crate) fn new(
        origin: Site,
        targets: BTreeSet<Site>,
        active_subset: Option<BTreeSet<u64>>,
    ) -> Self {
        let mut visitors = BTreeMap::new();
        for t in &targets {
            visitors.insert(*t, BTreeMap::new());
        }
        ActivationTrace {
            origin,
            targets,
            active_subset,
            waves: vec![vec![origin]],
            visitors,
        }
    }

    pub(crate) fn push_wave(&mut self, mut wave: Vec<Site>) {
        wave.sort_unstable();
        self.waves.push(wave);
    }

    pub(crate) fn record_first_hit(&mut self, target: Site, origin: Site, index: u64, time: u32) {
        if let Some(log) = self.visitors.get_mut(&target) {
            log.entry((origin, index)).or_insert(time);
        }
    }

    pub fn origin(&self) -> &Site {
        &self.origin
    }

    pub fn targets(&self) -> &BTreeSet<Site> {
        &self.targets
    }

    /// Indices awake at the origin at time 0 (`None` = all of them).
    pub fn active_subset(&self) -> Option<&BTreeSet<u64>> {
        self.active_subset.as_ref()
    }

    /// Largest recorded time `J`.
    pub fn horizon(&self) -> u32 {
        (self.waves.len() - 1) as u32
    }

    /// `W_j`, sorted ascending.
    pub fn wave(&self, j: u32) -> &[Site] {
        &self.waves[j as usize]
    }

    pub fn waves(&self) -> &[Vec<Site>] {
        &self.waves
    }

    /// First-visit time of `site`, if visited within the horizon.
    pub fn activation_time(&self, site: &Site) -> Option<u32> {
        for (j, wave) in self.waves.iter().enumerate() {
            if wave.binary_search(site).is_ok() {
                return Some(j as u32);
            }
        }
        None
    }

    /// Union of all waves.
    pub fn visited(&self) -> BTreeSet<Site> {
        self.waves.iter().flatten().copied().collect()
    }

    /// Number of sites visited within the horizon.
    pub fn visited_len(&self) -> usize {
        self.waves.iter().map(|w| w.len()).sum()
    }

    /// First-hit log of a target: `(origin, index) -> first hit time`.
    pub fn visitors(&self, target: &Site) -> Option<&BTreeMap<(Site, u64), u32>> {
        self.visitors.get(target)
    }

    /// Sorted `(origin, index, first hit time)` triples for a target.
    pub fn visitor_triples(&self, target: &Site) -> Vec<(Site, u64, u32)> {
        self.visitors
            .get(target)
            .map(|log| log.iter().map(|((o, i), t)| (*o, *i, *t)).collect())
            .unwrap_or_default()
    }

    /// Number of distinct origin sites, other than the target itself, with a
    /// recorded visit to the target.
    pub fn distinct_visiting_origins(&self, target: &Site) -> u64 {
        match self.visitors.get(target) {
            Some(log) => {
                let origins: BTreeSet<&Site> = log
                    .keys()
                    .map(|(o, _)| o)
                    .filter(|o| *o != target)
                    .collect();
                origins.len() as u64
            }
            None => 0,
        }
    }

    /// True when the recorded waves are pairwise disjoint.
    pub fn waves_are_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        for wave in &self.waves {
            for site in wave {
                if !seen.insert(*site) {
                    return false;
                }
            }
        }
        true
    }
}
