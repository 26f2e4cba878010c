//! One-step transition kernels for frog trajectories.

use crate::conductance::EnvSample;
use crate::error::FrogError;
use crate::site::{Site, MAX_DIM};
use crate::window::Window;
use crate::Result;
use std::sync::Arc;

/// Law of the non-forced part of an elliptic drift step.
#[derive(Debug, Clone, PartialEq)]
pub enum ResidualLaw {
    /// Stay put.
    Stay,
    /// Always step `+e_1`.
    PlusFirstAxis,
    /// Uniform over the `2d` unit steps.
    UniformUnit,
    /// Arbitrary finite step law given as `(offset, probability)` pairs.
    Table(Vec<(Vec<i64>, f64)>),
}

impl ResidualLaw {
    fn validate(&self, dim: usize) -> Result<()> {
        if let ResidualLaw::Table(rows) = self {
            let mut sum = 0.0;
            for (off, p) in rows {
                if off.len() != dim {
                    return Err(FrogError::InvalidParameter {
                        name: "residual",
                        reason: format!("offset {off:?} has wrong dimension"),
                    });
                }
                if !(*p >= 0.0) {
                    return Err(FrogError::InvalidParameter {
                        name: "residual",
                        reason: format!("negative probability {p}"),
                    });
                }
                sum += p;
            }
            if (sum - 1.0).abs() > 1e-12 {
                return Err(FrogError::InvalidParameter {
                    name: "residual",
                    reason: format!("probabilities sum to {sum}, not 1"),
                });
            }
        }
        Ok(())
    }

    fn offsets(&self, dim: usize) -> Vec<(Vec<i64>, f64)> {
        match self {
            ResidualLaw::Stay => vec![(vec![0; dim], 1.0)],
            ResidualLaw::PlusFirstAxis => {
                let mut off = vec![0; dim];
                off[0] = 1;
                vec![(off, 1.0)]
            }
            ResidualLaw::UniformUnit => (0..2 * dim)
                .map(|m| (unit_offset(dim, m), 1.0 / (2 * dim) as f64))
                .collect(),
            ResidualLaw::Table(rows) => rows.clone(),
        }
    }

    fn max_l1(&self, dim: usize) -> u64 {
        self.offsets(dim)
            .iter()
            .map(|(off, _)| off.iter().map(|c| c.unsigned_abs()).sum())
            .max()
            .unwrap_or(0)
    }
}

/// Unit vectors enumerated as `e_1, ..., e_d, -e_1, ..., -e_d`
/// (index `m` runs from 0 to `2d - 1`).
fn unit_offset(dim: usize, m: usize) -> Vec<i64> {
    let mut off = vec![0i64; dim];
    if m < dim {
        off[m] = 1;
    } else {
        off[m - dim] = -1;
    }
    off
}

/// A one-step transition law: site to weighted successor list.
#[derive(Debug, Clone)]
pub enum Kernel {
    /// Uniform ellipticity construction: a uniform variate `u < 2 d eps`
    /// forces the unit step `e_m` for `u` in `[(m-1) eps, m eps)`; otherwise
    /// the residual law applies. Every unit step has probability at least
    /// `eps`.
    EllipticDrift {
        dim: usize,
        eps: f64,
        residual: ResidualLaw,
    },
    /// The comb walk: on the spine `(x, 0)` step right with `p1`, left with
    /// `1 - p1 - p2`, up with `p2`; on a tooth `(x, y)`, `y >= 1`, step up
    /// with `p2` and down with `1 - p2`.
    Comb { p1: f64, p2: f64 },
    /// Nearest-neighbor walk biased away from the origin: pick an axis
    /// uniformly, step outward along it with probability `bias`, inward with
    /// `1 - bias` (a zero coordinate moves to `+1` with probability `bias`,
    /// `-1` otherwise).
    OutwardDrift { dim: usize, bias: f64 },
    /// Reversible walk derived from a conductance environment.
    Conductance(Arc<EnvSample>),
}

/// Elliptic drift kernel; requires `eps` in `(0, 1/(2 dim)]`.
pub fn elliptic_drift_kernel(dim: usize, eps: f64, residual: ResidualLaw) -> Result<Kernel> {
    if dim == 0 || dim > MAX_DIM {
        return Err(FrogError::InvalidParameter {
            name: "dim",
            reason: format!("dimension {dim} not in 1..={MAX_DIM}"),
        });
    }
    if !(eps > 0.0) || 2.0 * dim as f64 * eps > 1.0 + 1e-12 {
        return Err(FrogError::InvalidParameter {
            name: "eps",
            reason: format!("eps = {eps} not in (0, 1/{}]", 2 * dim),
        });
    }
    residual.validate(dim)?;
    Ok(Kernel::EllipticDrift { dim, eps, residual })
}

/// Comb kernel; requires `p1, p2 > 0` and `p1 + p2 < 1`.
pub fn comb_kernel(p1: f64, p2: f64) -> Result<Kernel> {
    if !(p1 > 0.0 && p2 > 0.0 && p1 + p2 < 1.0) {
        return Err(FrogError::InvalidParameter {
            name: "p1,p2",
            reason: format!("need p1, p2 > 0 and p1 + p2 < 1, got p1 = {p1}, p2 = {p2}"),
        });
    }
    Ok(Kernel::Comb { p1, p2 })
}

/// Outward drift kernel; requires `bias` in `(0, 1]`.
pub fn outward_drift_kernel(dim: usize, bias: f64) -> Result<Kernel> {
    if dim == 0 || dim > MAX_DIM {
        return Err(FrogError::InvalidParameter {
            name: "dim",
            reason: format!("dimension {dim} not in 1..={MAX_DIM}"),
        });
    }
    if !(bias > 0.0 && bias <= 1.0) {
        return Err(FrogError::InvalidParameter {
            name: "bias",
            reason: format!("bias = {bias} not in (0, 1]"),
        });
    }
    Ok(Kernel::OutwardDrift { dim, bias })
}

impl Kernel {
    /// Dimension of the lattice the kernel acts on (2 for the comb).
    pub fn dim(&self) -> usize {
        match self {
            Kernel::EllipticDrift { dim, .. } | Kernel::OutwardDrift { dim, .. } => *dim,
            Kernel::Comb { .. } => 2,
            Kernel::Conductance(env) => env.dim(),
        }
    }

    /// Upper bound `M` with `K(x, y) = 0` whenever `|x - y|_1 >= M`.
    pub fn support_bound(&self) -> u64 {
        match self {
            Kernel::EllipticDrift { dim, residual, .. } => 1 + residual.max_l1(*dim).max(1),
            Kernel::Comb { .. } | Kernel::OutwardDrift { .. } | Kernel::Conductance(_) => 2,
        }
    }

    /// Weighted successor list at `site`, in a fixed deterministic order.
    /// Probabilities are nonnegative and sum to 1 within 1e-12.
    pub fn successors(&self, site: &Site) -> Result<Vec<(Site, f64)>> {
        match self {
            Kernel::EllipticDrift { dim, eps, residual } => {
                let coords = lattice_coords(site, *dim)?;
                let forced = 2.0 * *dim as f64 * *eps;
                let mut rows: Vec<(Vec<i64>, f64)> =
                    (0..2 * dim).map(|m| (unit_offset(*dim, m), *eps)).collect();
                if forced < 1.0 {
                    for (off, p) in residual.offsets(*dim) {
                        let w = (1.0 - forced) * p;
                        if let Some(row) = rows.iter_mut().find(|(o, _)| *o == off) {
                            row.1 += w;
                        } else {
                            rows.push((off, w));
                        }
                    }
                }
                Ok(rows
                    .into_iter()
                    .map(|(off, p)| (offset_site(&coords, *dim, &off), p))
                    .collect())
            }
            Kernel::Comb { p1, p2 } => match site {
                Site::Comb { x, y } if *y == 0 => Ok(vec![
                    (Site::comb(x + 1, 0), *p1),
                    (Site::comb(x - 1, 0), 1.0 - p1 - p2),
                    (Site::comb(*x, 1), *p2),
                ]),
                Site::Comb { x, y } => Ok(vec![
                    (Site::comb(*x, y + 1), *p2),
                    (Site::comb(*x, y - 1), 1.0 - p2),
                ]),
                _ => Err(FrogError::GeometryMismatch { site: *site }),
            },
            Kernel::OutwardDrift { dim, bias } => {
                let coords = lattice_coords(site, *dim)?;
                let axis_p = 1.0 / *dim as f64;
                let mut rows = Vec::with_capacity(2 * dim);
                for k in 0..*dim {
                    let out_dir: i64 = if coords[k] >= 0 { 1 } else { -1 };
                    let mut off_out = vec![0i64; *dim];
                    off_out[k] = out_dir;
                    let mut off_in = vec![0i64; *dim];
                    off_in[k] = -out_dir;
                    rows.push((off_out, axis_p * *bias));
                    rows.push((off_in, axis_p * (1.0 - *bias)));
                }
                Ok(rows
                    .into_iter()
                    .filter(|(_, p)| *p > 0.0)
                    .map(|(off, p)| (offset_site(&coords, *dim, &off), p))
                    .collect())
            }
            Kernel::Conductance(env) => env.successors(site),
        }
    }

    /// Deterministic step driven by a uniform variate `u` in `[0, 1)`.
    ///
    /// For the elliptic family this is exactly the bin construction: `u` in
    /// `[(m-1) eps, m eps)` forces `e_m`; `u >= 2 d eps` draws from the
    /// residual law with the renormalized variate.
    #[inline]
    pub fn step(&self, site: &Site, u: f64) -> Result<Site> {
        match self {
            Kernel::EllipticDrift { dim, eps, residual } => {
                let forced = 2.0 * *dim as f64 * *eps;
                if u < forced {
                    let m = ((u / *eps) as usize).min(2 * dim - 1);
                    Ok(step_lattice(site, *dim, m)?)
                } else {
                    let u2 = ((u - forced) / (1.0 - forced)).clamp(0.0, 1.0 - f64::EPSILON);
                    match residual {
                        ResidualLaw::Stay => Ok(*site),
                        ResidualLaw::PlusFirstAxis => Ok(step_lattice(site, *dim, 0)?),
                        ResidualLaw::UniformUnit => {
                            let m = ((u2 * (2 * dim) as f64) as usize).min(2 * dim - 1);
                            Ok(step_lattice(site, *dim, m)?)
                        }
                        ResidualLaw::Table(rows) => {
                            let coords = lattice_coords(site, *dim)?;
                            let mut acc = 0.0;
                            for (off, p) in rows {
                                acc += p;
                                if u2 < acc {
                                    return Ok(offset_site(&coords, *dim, off));
                                }
                            }
                            let (off, _) = rows.last().expect("validated non-empty");
                            Ok(offset_site(&coords, *dim, off))
                        }
                    }
                }
            }
            Kernel::Comb { p1, p2 } => match site {
                Site::Comb { x, y } if *y == 0 => {
                    if u < *p1 {
                        Ok(Site::comb(x + 1, 0))
                    } else if u < p1 + (1.0 - p1 - p2) {
                        Ok(Site::comb(x - 1, 0))
                    } else {
                        Ok(Site::comb(*x, 1))
                    }
                }
                Site::Comb { x, y } => {
                    if u < *p2 {
                        Ok(Site::comb(*x, y + 1))
                    } else {
                        Ok(Site::comb(*x, y - 1))
                    }
                }
                _ => Err(FrogError::GeometryMismatch { site: *site }),
            },
            Kernel::OutwardDrift { dim, bias } => {
                let scaled = u * *dim as f64;
                let k = (scaled as usize).min(dim - 1);
                let v = scaled - k as f64;
                let coords = lattice_coords(site, *dim)?;
                let out_dir: i64 = if coords[k] >= 0 { 1 } else { -1 };
                let dir = if v < *bias { out_dir } else { -out_dir };
                let mut c = [0i64; MAX_DIM];
                c[..*dim].copy_from_slice(&coords[..*dim]);
                c[k] += dir;
                Ok(Site::Lattice {
                    dim: *dim as u8,
                    coords: c,
                })
            }
            Kernel::Conductance(env) => env.step(site, u),
        }
    }
}

fn lattice_coords(site: &Site, dim: usize) -> Result<[i64; MAX_DIM]> {
    match site {
        Site::Lattice { dim: sd, coords } if *sd as usize == dim => Ok(*coords),
        _ => Err(FrogError::GeometryMismatch { site: *site }),
    }
}

fn offset_site(coords: &[i64; MAX_DIM], dim: usize, off: &[i64]) -> Site {
    let mut c = *coords;
    for k in 0..dim {
        c[k] += off[k];
    }
    Site::Lattice {
        dim: dim as u8,
        coords: c,
    }
}

#[inline]
fn step_lattice(site: &Site, dim: usize, m: usize) -> Result<Site> {
    match site {
        Site::Lattice { dim: sd, coords } if *sd as usize == dim => {
            let mut c = *coords;
            if m < dim {
                c[m] += 1;
            } else {
                c[m - dim] -= 1;
            }
            Ok(Site::Lattice {
                dim: dim as u8,
                coords: c,
            })
        }
        _ => Err(FrogError::GeometryMismatch { site: *site }),
    }
}

/// Result of certifying the outward drift condition on a box.
#[derive(Debug, Clone)]
pub struct DriftReport {
    pub delta: f64,
    pub support_bound: u64,
    pub holds: bool,
    pub worst_site: Site,
    pub worst_margin: f64,
    pub sites_checked: usize,
}

/// Margin slack for floating-point drift sums.
const DRIFT_TOL: f64 = 1e-9;

/// Evaluates `|sum_y K(x, y) y|_1 - |x|_1` at every site of `box_sites` and
/// reports whether the minimum margin reaches `delta` (within 1e-9).
pub fn check_drift_condition(
    kernel: &Kernel,
    box_window: &Window,
    delta: f64,
) -> Result<DriftReport> {
    let sites = box_window.sites();
    if sites.is_empty() {
        return Err(FrogError::EmptyInput { what: "drift box" });
    }
    let dim = kernel.dim();
    let mut worst_margin = f64::INFINITY;
    let mut worst_site = sites[0];
    for site in &sites {
        let succ = kernel.successors(site)?;
        let mut mean = [0.0f64; MAX_DIM];
        for (y, p) in &succ {
            let c = match y {
                Site::Lattice { coords, .. } => *coords,
                Site::Comb { .. } => {
                    return Err(FrogError::GeometryMismatch { site: *y });
                }
            };
            for k in 0..dim {
                mean[k] += p * c[k] as f64;
            }
        }
        let mean_norm: f64 = mean[..dim].iter().map(|v| v.abs()).sum();
        let margin = mean_norm - site.l1_norm() as f64;
        if margin < worst_margin {
            worst_margin = margin;
            worst_site = *site;
        }
    }
    Ok(DriftReport {
        delta,
        support_bound: kernel.support_bound(),
        holds: worst_margin + DRIFT_TOL >= delta,
        worst_site,
        worst_margin,
        sites_checked: sites.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row_sum(kernel: &Kernel, site: &Site) -> f64 {
        kernel
            .successors(site)
            .unwrap()
            .iter()
            .map(|(_, p)| *p)
            .sum()
    }

    #[test]
    fn elliptic_half_is_simple_symmetric_walk() {
        // d = 1, eps = 1/2: the bins exhaust [0, 1).
        let k = elliptic_drift_kernel(1, 0.5, ResidualLaw::Stay).unwrap();
        let x = Site::lattice(&[0]);
        let succ = k.successors(&x).unwrap();
        assert_eq!(succ.len(), 2);
        for (_, p) in succ {
            assert!((p - 0.5).abs() < 1e-15);
        }
        assert_eq!(k.step(&x, 0.0).unwrap(), Site::lattice(&[1]));
        assert_eq!(k.step(&x, 0.49).unwrap(), Site::lattice(&[1]));
        assert_eq!(k.step(&x, 0.5).unwrap(), Site::lattice(&[-1]));
        assert_eq!(k.step(&x, 0.999).unwrap(), Site::lattice(&[-1]));
    }

    #[test]
    fn elliptic_bin_arithmetic_d1() {
        // d = 1, eps = 0.2, residual always +1: P[+1] = 0.2 + 0.6 = 0.8.
        let k = elliptic_drift_kernel(1, 0.2, ResidualLaw::PlusFirstAxis).unwrap();
        let x = Site::lattice(&[0]);
        let succ = k.successors(&x).unwrap();
        let p_right = succ
            .iter()
            .find(|(s, _)| *s == Site::lattice(&[1]))
            .unwrap()
            .1;
        let p_left = succ
            .iter()
            .find(|(s, _)| *s == Site::lattice(&[-1]))
            .unwrap()
            .1;
        assert!((p_right - 0.8).abs() < 1e-12);
        assert!((p_left - 0.2).abs() < 1e-12);
    }

    #[test]
    fn elliptic_bin_arithmetic_d2() {
        // d = 2, eps = 0.1, residual always +e1: every unit step >= 0.1.
        let k = elliptic_drift_kernel(2, 0.1, ResidualLaw::PlusFirstAxis).unwrap();
        let x = Site::lattice(&[3, -2]);
        let succ = k.successors(&x).unwrap();
        assert_eq!(succ.len(), 4);
        for (_, p) in &succ {
            assert!(*p >= 0.1 - 1e-15);
        }
        assert!((row_sum(&k, &x) - 1.0).abs() < 1e-12);
        let p_e1 = succ
            .iter()
            .find(|(s, _)| *s == Site::lattice(&[4, -2]))
            .unwrap()
            .1;
        assert!((p_e1 - 0.7).abs() < 1e-12);
    }

    #[test]
    fn elliptic_bin_boundaries_exact() {
        let dim = 2;
        let eps = 0.1;
        let k = elliptic_drift_kernel(dim, eps, ResidualLaw::PlusFirstAxis).unwrap();
        let x = Site::zero(dim);
        // u in [(m-1) eps, m eps) forces e_m with e_1, e_2 = +axes and
        // e_3, e_4 = -axes.
        let expected = [
            Site::lattice(&[1, 0]),
            Site::lattice(&[0, 1]),
            Site::lattice(&[-1, 0]),
            Site::lattice(&[0, -1]),
        ];
        for m in 0..4usize {
            let lo = m as f64 * eps;
            let hi = (m + 1) as f64 * eps;
            assert_eq!(k.step(&x, lo).unwrap(), expected[m]);
            assert_eq!(
                k.step(&x, hi - hi * f64::EPSILON).unwrap(),
                expected[m],
                "upper edge of bin {m}"
            );
        }
        // u >= 2 d eps draws the residual (+e1 here).
        assert_eq!(k.step(&x, 0.4).unwrap(), Site::lattice(&[1, 0]));
        assert_eq!(k.step(&x, 0.999).unwrap(), Site::lattice(&[1, 0]));
    }

    #[test]
    fn elliptic_rejects_out_of_range_eps() {
        assert!(elliptic_drift_kernel(1, 0.0, ResidualLaw::Stay).is_err());
        assert!(elliptic_drift_kernel(1, 0.51, ResidualLaw::Stay).is_err());
        assert!(elliptic_drift_kernel(2, 0.26, ResidualLaw::Stay).is_err());
        assert!(elliptic_drift_kernel(2, 0.25, ResidualLaw::Stay).is_ok());
    }

    #[test]
    fn comb_rules() {
        let (p1, p2) = (0.3, 0.25);
        let k = comb_kernel(p1, p2).unwrap();
        let spine = k.successors(&Site::comb(0, 0)).unwrap();
        assert_eq!(
            spine,
            vec![
                (Site::comb(1, 0), p1),
                (Site::comb(-1, 0), 1.0 - p1 - p2),
                (Site::comb(0, 1), p2),
            ]
        );
        let tooth = k.successors(&Site::comb(5, 3)).unwrap();
        assert_eq!(
            tooth,
            vec![(Site::comb(5, 4), p2), (Site::comb(5, 2), 1.0 - p2)]
        );
    }

    #[test]
    fn comb_row_sums_at_random_sites() {
        let k = comb_kernel(0.4, 0.35).unwrap();
        let mut state = 1234u64;
        for _ in 0..1000 {
            state = crate::rng::mix64(state);
            let x = (state % 2001) as i64 - 1000;
            state = crate::rng::mix64(state);
            let y = (state % 50) as i64;
            assert!((row_sum(&k, &Site::comb(x, y)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn comb_rejects_bad_parameters() {
        assert!(comb_kernel(0.0, 0.2).is_err());
        assert!(comb_kernel(0.6, 0.4).is_err());
        assert!(comb_kernel(0.5, 0.3).is_ok());
    }

    #[test]
    fn outward_drift_d1_arithmetic() {
        // K(x, x + sign(x)) = 0.8: drift 0.6 at every site.
        let k = outward_drift_kernel(1, 0.8).unwrap();
        for x in [-5i64, -1, 0, 1, 7] {
            let s = Site::lattice(&[x]);
            let succ = k.successors(&s).unwrap();
            let out_dir = if x >= 0 { 1 } else { -1 };
            let p_out = succ
                .iter()
                .find(|(t, _)| *t == Site::lattice(&[x + out_dir]))
                .unwrap()
                .1;
            assert!((p_out - 0.8).abs() < 1e-15);
        }
    }

    #[test]
    fn drift_checker_certifies_and_rejects() {
        let out = outward_drift_kernel(1, 0.8).unwrap();
        let box50 = Window::centered_box(1, 50);
        let report = check_drift_condition(&out, &box50, 0.6).unwrap();
        assert!(report.holds, "worst margin {}", report.worst_margin);

        // Symmetric walk: margin 0 somewhere, so delta = 0.1 fails.
        let sym = elliptic_drift_kernel(1, 0.5, ResidualLaw::Stay).unwrap();
        let report = check_drift_condition(&sym, &box50, 0.1).unwrap();
        assert!(!report.holds);
        assert!(report.worst_margin.abs() < 1e-12);

        // Degenerate bias 0.5: zero drift.
        let degenerate = outward_drift_kernel(1, 0.5).unwrap();
        let report = check_drift_condition(&degenerate, &box50, 0.1).unwrap();
        assert!(!report.holds);

        // delta beyond the range bound can never hold.
        let report = check_drift_condition(&out, &box50, 3.0).unwrap();
        assert!(!report.holds);
        assert!(report.delta > report.support_bound as f64);
    }

    #[test]
    fn outward_drift_d2_certified() {
        let k = outward_drift_kernel(2, 0.8).unwrap();
        let b = Window::centered_box(2, 20);
        let report = check_drift_condition(&k, &b, 0.6).unwrap();
        assert!(report.holds, "worst margin {}", report.worst_margin);
        assert!((row_sum(&k, &Site::lattice(&[3, 0])) - 1.0).abs() < 1e-12);
    }
}
