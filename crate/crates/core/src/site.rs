//! Sites of the state space: lattice points of `Z^d` or comb points.

use std::fmt;

/// Maximum supported lattice dimension.
pub const MAX_DIM: usize = 4;

/// A site of the state space.
///
/// Two geometries are supported: points of the integer lattice `Z^d`
/// (`d <= MAX_DIM`) and points of the comb `Z x N_0` (an integer spine
/// position plus a nonnegative tooth height).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    /// A lattice point; only the first `dim` entries of `coords` are used,
    /// the rest are zero.
    Lattice { dim: u8, coords: [i64; MAX_DIM] },
    /// A comb point `(x, y)` with `y >= 0`.
    Comb { x: i64, y: i64 },
}

impl Site {
    /// Lattice site from a coordinate slice.
    ///
    /// Panics if the dimension is zero or exceeds [`MAX_DIM`].
    pub fn lattice(coords: &[i64]) -> Self {
        assert!(
            !coords.is_empty() && coords.len() <= MAX_DIM,
            "lattice dimension must be in 1..={MAX_DIM}"
        );
        let mut c = [0i64; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Site::Lattice {
            dim: coords.len() as u8,
            coords: c,
        }
    }

    /// The origin of `Z^d`.
    pub fn zero(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim));
        Site::Lattice {
            dim: dim as u8,
            coords: [0; MAX_DIM],
        }
    }

    /// Comb site `(x, y)`; panics if `y < 0`.
    pub fn comb(x: i64, y: i64) -> Self {
        assert!(y >= 0, "comb sites have nonnegative tooth height");
        Site::Comb { x, y }
    }

    /// Dimension of the ambient lattice (2 for comb sites).
    pub fn dim(&self) -> usize {
        match self {
            Site::Lattice { dim, .. } => *dim as usize,
            Site::Comb { .. } => 2,
        }
    }

    /// Coordinates as a slice (comb: `[x, y]`-view is not available; use
    /// pattern matching instead).
    pub fn coords(&self) -> &[i64] {
        match self {
            Site::Lattice { dim, coords } => &coords[..*dim as usize],
            Site::Comb { .. } => panic!("coords() called on a comb site"),
        }
    }

    /// `l1` norm: sum of absolute coordinates (comb: `|x| + y`).
    pub fn l1_norm(&self) -> u64 {
        match self {
            Site::Lattice { dim, coords } => coords[..*dim as usize]
                .iter()
                .map(|c| c.unsigned_abs())
                .sum(),
            Site::Comb { x, y } => x.unsigned_abs() + *y as u64,
        }
    }

    /// `l1` distance between two sites of the same geometry.
    pub fn l1_distance(&self, other: &Site) -> u64 {
        match (self, other) {
            (Site::Lattice { dim: d1, coords: a }, Site::Lattice { dim: d2, coords: b })
                if d1 == d2 =>
            {
                a.iter().zip(b.iter()).map(|(x, y)| x.abs_diff(*y)).sum()
            }
            (Site::Comb { x: x1, y: y1 }, Site::Comb { x: x2, y: y2 }) => {
                // Comb graph distance: teeth meet only on the spine.
                if x1 == x2 {
                    y1.abs_diff(*y2)
                } else {
                    x1.abs_diff(*x2) + y1.unsigned_abs() + y2.unsigned_abs()
                }
            }
            _ => panic!("l1_distance between incompatible sites"),
        }
    }

    /// Lattice site translated by `delta` (first `dim` entries used).
    pub fn translated(&self, delta: &[i64]) -> Site {
        match self {
            Site::Lattice { dim, coords } => {
                let d = *dim as usize;
                assert!(delta.len() >= d);
                let mut c = [0i64; MAX_DIM];
                for k in 0..d {
                    c[k] = coords[k] + delta[k];
                }
                Site::Lattice {
                    dim: *dim,
                    coords: c,
                }
            }
            Site::Comb { .. } => panic!("translated() called on a comb site"),
        }
    }

    /// The 2d nearest neighbors of a lattice site.
    pub fn lattice_neighbors(&self) -> Vec<Site> {
        match self {
            Site::Lattice { dim, coords } => {
                let d = *dim as usize;
                let mut out = Vec::with_capacity(2 * d);
                for k in 0..d {
                    for s in [1i64, -1] {
                        let mut c = *coords;
                        c[k] += s;
                        out.push(Site::Lattice {
                            dim: *dim,
                            coords: c,
                        });
                    }
                }
                out
            }
            Site::Comb { .. } => panic!("lattice_neighbors() called on a comb site"),
        }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Lattice { dim, coords } => {
                write!(f, "(")?;
                for k in 0..*dim as usize {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", coords[k])?;
                }
                write!(f, ")")
            }
            Site::Comb { x, y } => write!(f, "comb({x},{y})"),
        }
    }
}

impl fmt::Debug for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
