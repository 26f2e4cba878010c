//! Permutations of the state space and their action on configurations.

use crate::config::FrogConfig;
use crate::counts::FrogCounts;
use crate::error::FrogError;
use crate::site::{Site, MAX_DIM};
use crate::sources::TrajectorySource;
use crate::window::Window;
use crate::Result;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// A bijection of the state space, identity outside its support.
#[derive(Debug, Clone)]
pub enum Permutation {
    /// Translation of `Z^d` by a fixed vector.
    LatticeShift { dim: usize, delta: [i64; MAX_DIM] },
    /// Shift of the comb along its spine: `(x, y) -> (x + k, y)`.
    CombShift { k: i64 },
    /// Explicit finite bijection; sites outside the map are fixed.
    Explicit {
        forward: HashMap<Site, Site>,
        inverse: HashMap<Site, Site>,
    },
}

impl Permutation {
    pub fn lattice_shift(delta: &[i64]) -> Self {
        assert!(!delta.is_empty() && delta.len() <= MAX_DIM);
        let mut d = [0i64; MAX_DIM];
        d[..delta.len()].copy_from_slice(delta);
        Permutation::LatticeShift {
            dim: delta.len(),
            delta: d,
        }
    }

    pub fn comb_shift(k: i64) -> Self {
        Permutation::CombShift { k }
    }

    pub fn identity() -> Self {
        Permutation::Explicit {
            forward: HashMap::new(),
            inverse: HashMap::new(),
        }
    }

    /// Builds an explicit permutation from `(site, image)` pairs. The pairs
    /// must define a bijection with equal key and image sets, so the map
    /// really is a permutation of the whole space with identity outside.
    pub fn explicit(pairs: impl IntoIterator<Item = (Site, Site)>) -> Result<Self> {
        let mut forward = HashMap::new();
        let mut inverse = HashMap::new();
        for (a, b) in pairs {
            if forward.insert(a, b).is_some() {
                return Err(FrogError::InvalidPermutation {
                    reason: format!("site {a} mapped twice"),
                });
            }
            if inverse.insert(b, a).is_some() {
                return Err(FrogError::InvalidPermutation {
                    reason: format!("image {b} hit twice"),
                });
            }
        }
        for key in forward.keys() {
            if !inverse.contains_key(key) {
                return Err(FrogError::InvalidPermutation {
                    reason: format!("support and image differ at {key}"),
                });
            }
        }
        Ok(Permutation::Explicit { forward, inverse })
    }

    pub fn apply(&self, site: &Site) -> Site {
        match self {
            Permutation::LatticeShift { dim, delta } => match site {
                Site::Lattice { dim: sd, .. } if *sd as usize == *dim => {
                    site.translated(&delta[..*dim])
                }
                _ => *site,
            },
            Permutation::CombShift { k } => match site {
                Site::Comb { x, y } => Site::comb(x + k, *y),
                _ => *site,
            },
            Permutation::Explicit { forward, .. } => *forward.get(site).unwrap_or(site),
        }
    }

    pub fn apply_inv(&self, site: &Site) -> Site {
        match self {
            Permutation::LatticeShift { dim, delta } => match site {
                Site::Lattice { dim: sd, .. } if *sd as usize == *dim => {
                    let neg: Vec<i64> = delta[..*dim].iter().map(|v| -v).collect();
                    site.translated(&neg)
                }
                _ => *site,
            },
            Permutation::CombShift { k } => match site {
                Site::Comb { x, y } => Site::comb(x - k, *y),
                _ => *site,
            },
            Permutation::Explicit { inverse, .. } => *inverse.get(site).unwrap_or(site),
        }
    }
}

struct PermutedSource {
    inner: Arc<dyn TrajectorySource>,
    perm: Permutation,
}

impl TrajectorySource for PermutedSource {
    fn advance(&self, origin: &Site, index: u64, step: u32, pos: &Site) -> Result<Site> {
        let next =
            self.inner
                .advance(&self.perm.apply(origin), index, step, &self.perm.apply(pos))?;
        Ok(self.perm.apply_inv(&next))
    }

    fn position(&self, origin: &Site, index: u64, step: u32) -> Result<Site> {
        let pos = self.inner.position(&self.perm.apply(origin), index, step)?;
        Ok(self.perm.apply_inv(&pos))
    }
}

/// The permutation action on configurations: counts become
/// `n'(x) = n(phi(x))` and trajectories
/// `s'_j(x, i) = phi^{-1}(s_j(phi(x), i))`, extra frogs included. The
/// returned window is the preimage of the original one, materialized
/// explicitly.
pub fn apply_permutation(config: &FrogConfig, perm: &Permutation) -> Result<FrogConfig> {
    let window = Window::Explicit(
        config
            .counts()
            .window()
            .sites()
            .into_iter()
            .map(|s| perm.apply_inv(&s))
            .collect(),
    );
    let mut entries = BTreeMap::new();
    for (site, n) in config.counts().support() {
        entries.insert(perm.apply_inv(site), n);
    }
    let counts = FrogCounts::new(window, entries)?;
    Ok(FrogConfig::new(
        counts,
        Arc::new(PermutedSource {
            inner: config.source(),
            perm: perm.clone(),
        }),
    ))
}
