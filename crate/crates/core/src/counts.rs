//! Frog counts per site and the i.i.d. laws that generate them.

use crate::error::FrogError;
use crate::rng::RngStream;
use crate::site::Site;
use crate::window::Window;
use crate::Result;
use std::collections::BTreeMap;

/// Number of sleeping frogs per site on a finite window; implicitly zero
/// outside the window.
#[derive(Debug, Clone, PartialEq)]
pub struct FrogCounts {
    window: Window,
    counts: BTreeMap<Site, u64>,
}

impl FrogCounts {
    /// Builds counts from explicit entries; zero entries are dropped and all
    /// keys must lie in the window.
    pub fn new(window: Window, entries: BTreeMap<Site, u64>) -> Result<Self> {
        for site in entries.keys() {
            if !window.contains(site) {
                return Err(FrogError::InvalidParameter {
                    name: "counts",
                    reason: format!("site {site} lies outside the window"),
                });
            }
        }
        let counts = entries.into_iter().filter(|(_, n)| *n > 0).collect();
        Ok(FrogCounts { window, counts })
    }

    /// `m` frogs at every site of the window.
    pub fn constant(window: Window, m: u64) -> Self {
        let counts = if m == 0 {
            BTreeMap::new()
        } else {
            window.sites().into_iter().map(|s| (s, m)).collect()
        };
        FrogCounts { window, counts }
    }

    /// Empty window helper used by single-site tests.
    pub fn empty(window: Window) -> Self {
        FrogCounts {
            window,
            counts: BTreeMap::new(),
        }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    /// Count at `site` (zero outside the window).
    pub fn count(&self, site: &Site) -> u64 {
        self.counts.get(site).copied().unwrap_or(0)
    }

    /// Sites with at least one frog, in ascending order.
    pub fn support(&self) -> impl Iterator<Item = (&Site, u64)> {
        self.counts.iter().map(|(s, n)| (s, *n))
    }

    /// Total number of frogs.
    pub fn total(&self) -> u128 {
        self.counts.values().map(|n| *n as u128).sum()
    }

    /// Returns a copy with a changed count at one site (must lie in the
    /// window).
    pub fn with_count(&self, site: Site, n: u64) -> Result<Self> {
        if !self.window.contains(&site) {
            return Err(FrogError::InvalidParameter {
                name: "site",
                reason: format!("site {site} lies outside the window"),
            });
        }
        let mut counts = self.counts.clone();
        if n == 0 {
            counts.remove(&site);
        } else {
            counts.insert(site, n);
        }
        Ok(FrogCounts {
            window: self.window.clone(),
            counts,
        })
    }

    /// Copy with every count clamped to `cap`. Heavy-tailed laws produce
    /// astronomically large counts; simulations clamp them to keep the
    /// per-frog engine enumerable. The cap is an explicit, reported
    /// truncation in the same spirit as the finite window.
    pub fn capped(&self, cap: u64) -> Self {
        FrogCounts {
            window: self.window.clone(),
            counts: self
                .counts
                .iter()
                .map(|(s, n)| (*s, (*n).min(cap)))
                .collect(),
        }
    }
}

/// I.i.d. law of the number of frogs per site.
#[derive(Debug, Clone, PartialEq)]
pub enum CountsLaw {
    /// Exactly `m` frogs everywhere.
    Constant { m: u64 },
    /// One frog with probability `p`, none otherwise.
    Bernoulli { p: f64 },
    /// Tail `P[count >= t] = min(1, c0 / (log t)^d)` for `t >= t0 >= 3`.
    /// Below `t0` the tail mass sits as an atom at `t0`, the remainder at 0.
    LogTail { c0: f64, d: u32, t0: u64 },
    /// Tail `P[log count >= s] = min(1, theta / s)`; the borderline family
    /// with infinite log-moment and linear decay of `s P[log count >= s]`.
    LogMoment { theta: f64 },
    /// Different laws on the comb spine (`y == 0`) and teeth (`y >= 1`).
    Comb {
        spine: Box<CountsLaw>,
        tooth: Box<CountsLaw>,
    },
}

impl CountsLaw {
    pub fn validate(&self) -> Result<()> {
        match self {
            CountsLaw::Constant { .. } => Ok(()),
            CountsLaw::Bernoulli { p } => {
                if (0.0..=1.0).contains(p) {
                    Ok(())
                } else {
                    Err(FrogError::InvalidParameter {
                        name: "p",
                        reason: format!("Bernoulli parameter {p} not in [0, 1]"),
                    })
                }
            }
            CountsLaw::LogTail { c0, d, t0 } => {
                if !(*c0 > 0.0) {
                    Err(FrogError::InvalidParameter {
                        name: "c0",
                        reason: format!("need c0 > 0, got {c0}"),
                    })
                } else if *d == 0 {
                    Err(FrogError::InvalidParameter {
                        name: "d",
                        reason: "tail exponent d must be >= 1".into(),
                    })
                } else if *t0 < 3 {
                    Err(FrogError::InvalidParameter {
                        name: "t0",
                        reason: format!("need t0 >= 3, got {t0}"),
                    })
                } else {
                    Ok(())
                }
            }
            CountsLaw::LogMoment { theta } => {
                if *theta > 0.0 {
                    Ok(())
                } else {
                    Err(FrogError::InvalidParameter {
                        name: "theta",
                        reason: format!("need theta > 0, got {theta}"),
                    })
                }
            }
            CountsLaw::Comb { spine, tooth } => {
                if matches!(**spine, CountsLaw::Comb { .. })
                    || matches!(**tooth, CountsLaw::Comb { .. })
                {
                    return Err(FrogError::InvalidParameter {
                        name: "law",
                        reason: "comb laws cannot nest".into(),
                    });
                }
                spine.validate()?;
                tooth.validate()
            }
        }
    }

    /// Closed-form tail `P[count >= t]` (not defined for the comb split;
    /// query the component laws instead).
    pub fn tail(&self, t: u64) -> f64 {
        if t == 0 {
            return 1.0;
        }
        match self {
            CountsLaw::Constant { m } => {
                if t <= *m {
                    1.0
                } else {
                    0.0
                }
            }
            CountsLaw::Bernoulli { p } => {
                if t == 1 {
                    *p
                } else {
                    0.0
                }
            }
            CountsLaw::LogTail { c0, d, t0 } => {
                let t_eff = t.max(*t0);
                (c0 / (t_eff as f64).ln().powi(*d as i32)).min(1.0)
            }
            CountsLaw::LogMoment { theta } => {
                if t == 1 {
                    1.0
                } else {
                    (theta / (t as f64).ln()).min(1.0)
                }
            }
            CountsLaw::Comb { .. } => panic!("tail() is per-component for comb laws"),
        }
    }

    /// Inverse-CDF draw from a single uniform variate, saturating at
    /// `u64::MAX` (the heavy-tailed families exceed every integer type).
    pub fn inverse_cdf(&self, u: f64) -> u64 {
        match self {
            CountsLaw::Constant { m } => *m,
            CountsLaw::Bernoulli { p } => {
                if u < *p {
                    1
                } else {
                    0
                }
            }
            CountsLaw::LogTail { c0, d, t0 } => {
                let q0 = self.tail(*t0);
                if u >= q0 {
                    return 0;
                }
                if u <= 0.0 {
                    return u64::MAX;
                }
                let s = (c0 / u).powf(1.0 / *d as f64);
                saturating_exp_floor(s).max(*t0)
            }
            CountsLaw::LogMoment { theta } => {
                if u <= 0.0 {
                    return u64::MAX;
                }
                saturating_exp_floor(theta / u).max(1)
            }
            CountsLaw::Comb { .. } => panic!("inverse_cdf() is per-component for comb laws"),
        }
    }
}

fn saturating_exp_floor(s: f64) -> u64 {
    // Float-to-int casts saturate, so +inf maps to u64::MAX.
    s.exp() as u64
}

/// Samples i.i.d. counts on the window via inverse CDF on each site's
/// stream. A comb law draws the spine law at `y == 0` and the tooth law at
/// `y >= 1` (and requires a comb window).
pub fn sample_counts(law: &CountsLaw, window: &Window, rng: &RngStream) -> Result<FrogCounts> {
    law.validate()?;
    let mut counts = BTreeMap::new();
    for site in window.sites() {
        let per_site = match (law, &site) {
            (CountsLaw::Comb { spine, tooth }, Site::Comb { y, .. }) => {
                if *y == 0 {
                    spine.as_ref()
                } else {
                    tooth.as_ref()
                }
            }
            (CountsLaw::Comb { .. }, _) => {
                return Err(FrogError::InvalidParameter {
                    name: "window",
                    reason: "comb counts law needs a comb window".into(),
                })
            }
            (other, _) => other,
        };
        let n = per_site.inverse_cdf(rng.count_variate(&site));
        if n > 0 {
            counts.insert(site, n);
        }
    }
    Ok(FrogCounts {
        window: window.clone(),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_law_everywhere() {
        let w = Window::centered_box(1, 5);
        let c = sample_counts(&CountsLaw::Constant { m: 1 }, &w, &RngStream::new(3)).unwrap();
        for s in w.sites() {
            assert_eq!(c.count(&s), 1);
        }
        assert_eq!(c.total(), 11);
    }

    #[test]
    fn logtail_closed_form_tail() {
        let law = CountsLaw::LogTail {
            c0: 1.0,
            d: 1,
            t0: 3,
        };
        let expect = 1.0 / (100f64).ln();
        assert!((law.tail(100) - expect).abs() < 1e-15);
        assert!((expect - 0.2171).abs() < 1e-4);
    }

    /// The inverse CDF evaluated at the law's own tail probabilities
    /// reproduces the defining formula: drawing with `u = P[count >= t]`
    /// yields at least `t`, and nudging `u` just above drops below `t`.
    #[test]
    fn logtail_inverse_cdf_is_exact_at_tail_points() {
        let law = CountsLaw::LogTail {
            c0: 2.5,
            d: 2,
            t0: 5,
        };
        for t in [5u64, 17, 100, 4096, 1_000_000] {
            let u = law.tail(t);
            if u < 1.0 {
                assert!(law.inverse_cdf(u * (1.0 - 1e-12)) >= t);
                assert!(law.inverse_cdf(u * (1.0 + 1e-9)) < t);
            }
        }
    }

    #[test]
    fn logtail_empirical_tail_within_three_sigma() {
        let law = CountsLaw::LogTail {
            c0: 1.0,
            d: 1,
            t0: 3,
        };
        let rng = RngStream::new(2024);
        let n = 1_000_000u64;
        let mut hits = [0u64; 3];
        let thresholds = [10u64, 100, 1000];
        for i in 0..n {
            let draw = law.inverse_cdf(rng.series_variate(i, 7));
            for (k, t) in thresholds.iter().enumerate() {
                if draw >= *t {
                    hits[k] += 1;
                }
            }
        }
        for (k, t) in thresholds.iter().enumerate() {
            let target = law.tail(*t);
            let se = (target * (1.0 - target) / n as f64).sqrt();
            let observed = hits[k] as f64 / n as f64;
            assert!(
                (observed - target).abs() <= 3.0 * se,
                "t = {t}: observed {observed}, target {target}, se {se}"
            );
        }
    }

    #[test]
    fn logmoment_tail_and_saturation() {
        let law = CountsLaw::LogMoment { theta: 2.0 };
        assert!((law.tail(100) - 2.0 / (100f64).ln()).abs() < 1e-15);
        assert_eq!(law.inverse_cdf(0.0), u64::MAX);
        assert_eq!(law.inverse_cdf(1e-9), u64::MAX);
    }

    #[test]
    fn comb_law_splits_spine_and_teeth() {
        let law = CountsLaw::Comb {
            spine: Box::new(CountsLaw::Constant { m: 7 }),
            tooth: Box::new(CountsLaw::Constant { m: 1 }),
        };
        let w = Window::Comb {
            spine_radius: 2,
            tooth_height: 2,
        };
        let c = sample_counts(&law, &w, &RngStream::new(8)).unwrap();
        assert_eq!(c.count(&Site::comb(1, 0)), 7);
        assert_eq!(c.count(&Site::comb(1, 1)), 1);
        assert_eq!(c.count(&Site::comb(-2, 2)), 1);

        let lattice = Window::centered_box(1, 2);
        assert!(sample_counts(&law, &lattice, &RngStream::new(8)).is_err());
    }

    #[test]
    fn capping_clamps_counts() {
        let law = CountsLaw::LogTail {
            c0: 40.0,
            d: 2,
            t0: 3,
        };
        let w = Window::centered_box(1, 3);
        let c = sample_counts(&law, &w, &RngStream::new(5)).unwrap();
        let capped = c.capped(64);
        for s in w.sites() {
            assert!(capped.count(&s) <= 64);
            assert_eq!(capped.count(&s), c.count(&s).min(64));
        }
    }

    #[test]
    fn counts_reject_sites_outside_window() {
        let w = Window::centered_box(1, 1);
        let mut entries = BTreeMap::new();
        entries.insert(Site::lattice(&[5]), 1u64);
        assert!(FrogCounts::new(w, entries).is_err());
    }
}
