//! Finite windows of the state space on which frog counts live.

use crate::site::{Site, MAX_DIM};
use std::collections::BTreeSet;

/// A finite set of sites. Counts are implicitly zero outside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Window {
    /// `l1` ball `{ x : |x|_1 <= radius }` in `Z^dim`.
    L1Ball { dim: usize, radius: u32 },
    /// Axis-aligned box `{ x : lo[k] <= x[k] <= hi[k] }` in `Z^dim`.
    Rect {
        dim: usize,
        lo: [i64; MAX_DIM],
        hi: [i64; MAX_DIM],
    },
    /// Comb window `{ (x, y) : |x| <= spine_radius, 0 <= y <= tooth_height }`.
    Comb {
        spine_radius: u32,
        tooth_height: u32,
    },
    /// An arbitrary finite site set.
    Explicit(BTreeSet<Site>),
}

impl Window {
    /// Square box `[-r, r]^dim`.
    pub fn centered_box(dim: usize, r: i64) -> Self {
        assert!((1..=MAX_DIM).contains(&dim) && r >= 0);
        let mut lo = [0i64; MAX_DIM];
        let mut hi = [0i64; MAX_DIM];
        for k in 0..dim {
            lo[k] = -r;
            hi[k] = r;
        }
        Window::Rect { dim, lo, hi }
    }

    pub fn contains(&self, site: &Site) -> bool {
        match (self, site) {
            (Window::L1Ball { dim, radius }, Site::Lattice { dim: sd, .. }) => {
                *sd as usize == *dim && site.l1_norm() <= *radius as u64
            }
            (Window::Rect { dim, lo, hi }, Site::Lattice { dim: sd, coords }) => {
                *sd as usize == *dim && (0..*dim).all(|k| lo[k] <= coords[k] && coords[k] <= hi[k])
            }
            (
                Window::Comb {
                    spine_radius,
                    tooth_height,
                },
                Site::Comb { x, y },
            ) => x.unsigned_abs() <= *spine_radius as u64 && *y <= *tooth_height as i64,
            (Window::Explicit(set), s) => set.contains(s),
            _ => false,
        }
    }

    /// All sites of the window in ascending `Site` order.
    pub fn sites(&self) -> Vec<Site> {
        match self {
            Window::L1Ball { dim, radius } => {
                let r = *radius as i64;
                let mut out = BTreeSet::new();
                let mut coords = [0i64; MAX_DIM];
                enumerate_ball(*dim, r, 0, &mut coords, &mut out);
                out.into_iter().collect()
            }
            Window::Rect { dim, lo, hi } => {
                let mut out = BTreeSet::new();
                let mut coords = [0i64; MAX_DIM];
                enumerate_rect(*dim, lo, hi, 0, &mut coords, &mut out);
                out.into_iter().collect()
            }
            Window::Comb {
                spine_radius,
                tooth_height,
            } => {
                let mut out = BTreeSet::new();
                for x in -(*spine_radius as i64)..=(*spine_radius as i64) {
                    for y in 0..=(*tooth_height as i64) {
                        out.insert(Site::comb(x, y));
                    }
                }
                out.into_iter().collect()
            }
            Window::Explicit(set) => set.iter().copied().collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Window::L1Ball { .. } | Window::Rect { .. } => self.sites().len(),
            Window::Comb {
                spine_radius,
                tooth_height,
            } => (2 * *spine_radius as usize + 1) * (*tooth_height as usize + 1),
            Window::Explicit(set) => set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Bounding box `(lo, hi)` of the window in lattice coordinates
    /// (comb: spine coordinate and tooth height).
    pub fn bounding_box(&self) -> ([i64; MAX_DIM], [i64; MAX_DIM]) {
        match self {
            Window::L1Ball { dim, radius } => {
                let mut lo = [0i64; MAX_DIM];
                let mut hi = [0i64; MAX_DIM];
                for k in 0..*dim {
                    lo[k] = -(*radius as i64);
                    hi[k] = *radius as i64;
                }
                (lo, hi)
            }
            Window::Rect { lo, hi, .. } => (*lo, *hi),
            Window::Comb {
                spine_radius,
                tooth_height,
            } => {
                let mut lo = [0i64; MAX_DIM];
                let mut hi = [0i64; MAX_DIM];
                lo[0] = -(*spine_radius as i64);
                hi[0] = *spine_radius as i64;
                lo[1] = 0;
                hi[1] = *tooth_height as i64;
                (lo, hi)
            }
            Window::Explicit(set) => {
                let mut lo = [i64::MAX; MAX_DIM];
                let mut hi = [i64::MIN; MAX_DIM];
                for s in set {
                    match s {
                        Site::Lattice { dim, coords } => {
                            for k in 0..*dim as usize {
                                lo[k] = lo[k].min(coords[k]);
                                hi[k] = hi[k].max(coords[k]);
                            }
                        }
                        Site::Comb { x, y } => {
                            lo[0] = lo[0].min(*x);
                            hi[0] = hi[0].max(*x);
                            lo[1] = lo[1].min(*y);
                            hi[1] = hi[1].max(*y);
                        }
                    }
                }
                for k in 0..MAX_DIM {
                    if lo[k] == i64::MAX {
                        lo[k] = 0;
                        hi[k] = 0;
                    }
                }
                (lo, hi)
            }
        }
    }
}

fn enumerate_ball(
    dim: usize,
    budget: i64,
    k: usize,
    coords: &mut [i64; MAX_DIM],
    out: &mut BTreeSet<Site>,
) {
    if k == dim {
        out.insert(Site::lattice(&coords[..dim]));
        return;
    }
    for v in -budget..=budget {
        coords[k] = v;
        enumerate_ball(dim, budget - v.abs(), k + 1, coords, out);
    }
    coords[k] = 0;
}

fn enumerate_rect(
    dim: usize,
    lo: &[i64; MAX_DIM],
    hi: &[i64; MAX_DIM],
    k: usize,
    coords: &mut [i64; MAX_DIM],
    out: &mut BTreeSet<Site>,
) {
    if k == dim {
        out.insert(Site::lattice(&coords[..dim]));
        return;
    }
    for v in lo[k]..=hi[k] {
        coords[k] = v;
        enumerate_rect(dim, lo, hi, k + 1, coords, out);
    }
    coords[k] = 0;
}
