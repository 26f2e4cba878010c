//! Counter-based random number streams.
//!
//! Every variate is a pure function of `(master seed, purpose, site, frog
//! index, step)`. This makes sampling lazy, order-independent and safe to
//! parallelize: the wavefront may query frogs in any data-dependent order and
//! still reproduce bit-identical runs. The extra-frog stream (`frog == 0`) is
//! automatically disjoint from all initial-frog streams (`frog >= 1`), which
//! is how the simulator realizes independent auxiliary copies of a frog.

use crate::site::Site;

const DOMAIN_STEP: u64 = 0x5354_4550_0000_0001; // trajectory steps
const DOMAIN_COUNT: u64 = 0x434f_554e_0000_0002; // frog counts per site
const DOMAIN_EDGE: u64 = 0x4544_4745_0000_0003; // conductances per edge
const DOMAIN_SERIES: u64 = 0x5345_5249_0000_0004; // series oracle draws
const DOMAIN_SUB: u64 = 0x5355_4253_0000_0005; // derived sub-streams
const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// One round of the splitmix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
fn absorb(state: u64, word: u64) -> u64 {
    mix64(state ^ word.wrapping_mul(GOLDEN))
}

#[inline]
fn to_unit(z: u64) -> f64 {
    // 53 random bits, uniform on [0, 1).
    (z >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn site_words(site: &Site) -> ([u64; 6], usize) {
    let mut w = [0u64; 6];
    match site {
        Site::Lattice { dim, coords } => {
            w[0] = 1;
            w[1] = *dim as u64;
            for k in 0..*dim as usize {
                w[2 + k] = coords[k] as u64;
            }
            ((w), 2 + *dim as usize)
        }
        Site::Comb { x, y } => {
            w[0] = 2;
            w[1] = *x as u64;
            w[2] = *y as u64;
            (w, 3)
        }
    }
}

/// Premixed per-frog key; one `mix64` round per step remains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrogKey(pub(crate) u64);

impl FrogKey {
    /// Uniform variate on `[0, 1)` for the given step counter.
    #[inline]
    pub fn variate(self, step: u32) -> f64 {
        to_unit(mix64(self.0 ^ (step as u64).wrapping_mul(GOLDEN)))
    }
}

/// A deterministic, splittable stream of uniform variates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent sub-stream, e.g. one per replicate.
    pub fn derive(&self, label: u64) -> RngStream {
        RngStream {
            seed: absorb(absorb(self.seed, DOMAIN_SUB), label),
        }
    }

    fn site_state(&self, domain: u64, site: &Site) -> u64 {
        let (w, n) = site_words(site);
        let mut h = absorb(self.seed, domain);
        for word in &w[..n] {
            h = absorb(h, *word);
        }
        h
    }

    /// Key for the trajectory stream of frog `(site, index)`; `index == 0`
    /// is the extra frog.
    pub fn frog_key(&self, site: &Site, index: u64) -> FrogKey {
        FrogKey(absorb(self.site_state(DOMAIN_STEP, site), index))
    }

    /// Uniform variate driving step `step -> step + 1` of frog
    /// `(site, index)`.
    #[inline]
    pub fn step_variate(&self, site: &Site, index: u64, step: u32) -> f64 {
        self.frog_key(site, index).variate(step)
    }

    /// Uniform variate for the frog count at `site`.
    pub fn count_variate(&self, site: &Site) -> f64 {
        to_unit(mix64(self.site_state(DOMAIN_COUNT, site)))
    }

    /// Uniform variate for the conductance of the edge `{site, site + e_axis}`.
    pub fn edge_variate(&self, site: &Site, axis: usize) -> f64 {
        to_unit(mix64(absorb(
            self.site_state(DOMAIN_EDGE, site),
            axis as u64,
        )))
    }

    /// Uniform variate for the series-oracle draw `Y_{i,n}`.
    pub fn series_variate(&self, i: u64, n: u64) -> f64 {
        let h = absorb(absorb(absorb(self.seed, DOMAIN_SERIES), i), n);
        to_unit(mix64(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_distinct_streams() {
        let rng = RngStream::new(7);
        let x = Site::lattice(&[3, -1]);
        assert_eq!(rng.step_variate(&x, 1, 5), rng.step_variate(&x, 1, 5));
        assert_ne!(rng.step_variate(&x, 1, 5), rng.step_variate(&x, 0, 5));
        assert_ne!(rng.step_variate(&x, 1, 5), rng.step_variate(&x, 1, 6));
        assert_ne!(
            rng.step_variate(&x, 1, 5),
            rng.step_variate(&Site::lattice(&[3, 1]), 1, 5)
        );
        assert_ne!(rng.count_variate(&x), rng.step_variate(&x, 0, 0));
    }

    #[test]
    fn geometry_tag_separates_streams() {
        let rng = RngStream::new(11);
        let a = Site::lattice(&[4, 2]);
        let b = Site::comb(4, 2);
        assert_ne!(rng.step_variate(&a, 1, 0), rng.step_variate(&b, 1, 0));
    }

    /// Avalanche sanity: flipping any single input bit flips close to half
    /// of the output bits on average.
    #[test]
    fn avalanche_on_keys_and_steps() {
        let mut total = 0u64;
        let mut count = 0u64;
        let mut worst_lo = 64.0f64;
        let mut worst_hi = 0.0f64;
        for trial in 0..64u64 {
            let base = mix64(trial.wrapping_mul(GOLDEN) ^ 0xdead_beef);
            let out0 = mix64(base);
            for bit in 0..64 {
                let out1 = mix64(base ^ (1u64 << bit));
                let flips = (out0 ^ out1).count_ones() as u64;
                total += flips;
                count += 1;
                worst_lo = worst_lo.min(flips as f64);
                worst_hi = worst_hi.max(flips as f64);
            }
        }
        let mean = total as f64 / count as f64;
        assert!((mean - 32.0).abs() < 2.0, "mean avalanche {mean}");
        assert!(worst_lo >= 10.0 && worst_hi <= 54.0);
    }

    #[test]
    fn unit_variates_have_sane_moments() {
        let rng = RngStream::new(99);
        let n = 100_000u64;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for i in 0..n {
            let u = rng.series_variate(i, 0);
            assert!((0.0..1.0).contains(&u));
            sum += u;
            sumsq += u * u;
        }
        let mean = sum / n as f64;
        let var = sumsq / n as f64 - mean * mean;
        assert!((mean - 0.5).abs() < 0.005, "mean {mean}");
        assert!((var - 1.0 / 12.0).abs() < 0.005, "var {var}");
    }
}
