//! Random conductance environments on finite lattice boxes.
//!
//! Each undirected nearest-neighbor edge `{x, y}` of the box carries a
//! nonnegative conductance `c({x, y})`. The site weight is
//! `q(x) = sum of incident conductances` and the derived walk kernel is
//! `kappa(x, y) = c({x, y}) / q(x)` (with `kappa(x, x) = 1` when
//! `q(x) = 0`). Edges leaving the box are treated as closed, so the walk is
//! confined to the box; a cluster is called "infinite" in the finite-volume
//! sense when it touches the box boundary.

use crate::error::FrogError;
use crate::rng::RngStream;
use crate::site::{Site, MAX_DIM};
use crate::window::Window;
use crate::Result;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::io::Write;

/// I.i.d. law for edge conductances.
#[derive(Debug, Clone, PartialEq)]
pub enum ConductanceLaw {
    /// `c = 1` with probability `p`, else `0` (bond percolation).
    Bernoulli { p: f64 },
    /// Uniform on `[lo, hi)`.
    Uniform { lo: f64, hi: f64 },
}

impl ConductanceLaw {
    fn validate(&self) -> Result<()> {
        match self {
            ConductanceLaw::Bernoulli { p } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(FrogError::InvalidParameter {
                        name: "p",
                        reason: format!("Bernoulli parameter {p} not in [0, 1]"),
                    });
                }
            }
            ConductanceLaw::Uniform { lo, hi } => {
                if !(*lo >= 0.0 && hi > lo) {
                    return Err(FrogError::InvalidParameter {
                        name: "lo,hi",
                        reason: format!("need 0 <= lo < hi, got [{lo}, {hi})"),
                    });
                }
            }
        }
        Ok(())
    }

    fn sample(&self, u: f64) -> f64 {
        match self {
            ConductanceLaw::Bernoulli { p } => {
                if u < *p {
                    1.0
                } else {
                    0.0
                }
            }
            ConductanceLaw::Uniform { lo, hi } => lo + u * (hi - lo),
        }
    }
}

/// A sampled conductance environment on a finite box.
#[derive(Debug, Clone)]
pub struct EnvSample {
    dim: usize,
    window: Window,
    sites: Vec<Site>,
    index: HashMap<Site, u32>,
    /// `cond[i][k]` is the conductance of `{sites[i], sites[i] + e_k}`,
    /// or 0 when that neighbor is outside the box.
    cond: Vec<[f64; MAX_DIM]>,
    q: Vec<f64>,
}

/// Samples symmetric i.i.d. edge conductances on the box and derives the
/// weights `q` and the walk kernel.
pub fn sample_conductance_env(
    window: &Window,
    law: &ConductanceLaw,
    rng: &RngStream,
) -> Result<EnvSample> {
    law.validate()?;
    let sites = window.sites();
    if sites.is_empty() {
        return Err(FrogError::EmptyInput {
            what: "conductance box",
        });
    }
    let dim = match sites[0] {
        Site::Lattice { dim, .. } => dim as usize,
        Site::Comb { .. } => {
            return Err(FrogError::InvalidParameter {
                name: "window",
                reason: "conductance environments live on lattice windows".into(),
            })
        }
    };
    let index: HashMap<Site, u32> = sites
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, i as u32))
        .collect();
    let mut cond = vec![[0.0f64; MAX_DIM]; sites.len()];
    for (i, site) in sites.iter().enumerate() {
        for k in 0..dim {
            let mut delta = [0i64; MAX_DIM];
            delta[k] = 1;
            let neighbor = site.translated(&delta[..dim]);
            if window.contains(&neighbor) {
                cond[i][k] = law.sample(rng.edge_variate(site, k));
            }
        }
    }
    let mut q = vec![0.0f64; sites.len()];
    for (i, site) in sites.iter().enumerate() {
        let mut sum = 0.0;
        for k in 0..dim {
            sum += cond[i][k];
            let mut delta = [0i64; MAX_DIM];
            delta[k] = -1;
            let neighbor = site.translated(&delta[..dim]);
            if let Some(&j) = index.get(&neighbor) {
                sum += cond[j as usize][k];
            }
        }
        q[i] = sum;
    }
    Ok(EnvSample {
        dim,
        window: window.clone(),
        sites,
        index,
        cond,
        q,
    })
}

impl EnvSample {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    /// Conductance of the undirected edge `{x, y}`; `None` if the two sites
    /// are not nearest neighbors inside the box.
    pub fn conductance(&self, x: &Site, y: &Site) -> Option<f64> {
        let (&i, &j) = (self.index.get(x)?, self.index.get(y)?);
        let (cx, cy) = (coords_of(x), coords_of(y));
        let mut axis = None;
        let mut diff_total = 0u64;
        for k in 0..self.dim {
            let d = cx[k].abs_diff(cy[k]);
            diff_total += d;
            if d == 1 {
                axis = Some(k);
            }
        }
        if diff_total != 1 {
            return None;
        }
        let k = axis.unwrap();
        if cy[k] > cx[k] {
            Some(self.cond[i as usize][k])
        } else {
            Some(self.cond[j as usize][k])
        }
    }

    /// Site weight `q(x) = sum of incident conductances`.
    pub fn q(&self, x: &Site) -> Option<f64> {
        self.index.get(x).map(|&i| self.q[i as usize])
    }

    /// Walk kernel `kappa(x, y) = c({x, y}) / q(x)`, with the conventions
    /// `kappa(x, x) = 1` when `q(x) = 0` and `kappa = 0` for non-neighbors.
    pub fn kappa(&self, x: &Site, y: &Site) -> f64 {
        let Some(&i) = self.index.get(x) else {
            return 0.0;
        };
        let qx = self.q[i as usize];
        if x == y {
            return if qx == 0.0 { 1.0 } else { 0.0 };
        }
        if qx == 0.0 {
            return 0.0;
        }
        match self.conductance(x, y) {
            Some(c) => c / qx,
            None => 0.0,
        }
    }

    /// Successor list of the derived walk at `site`.
    pub fn successors(&self, site: &Site) -> Result<Vec<(Site, f64)>> {
        let Some(&i) = self.index.get(site) else {
            return Err(FrogError::WindowExhausted { site: *site });
        };
        let qx = self.q[i as usize];
        if qx == 0.0 {
            return Ok(vec![(*site, 1.0)]);
        }
        let mut out = Vec::with_capacity(2 * self.dim);
        for k in 0..self.dim {
            for dir in [1i64, -1] {
                let mut delta = [0i64; MAX_DIM];
                delta[k] = dir;
                let neighbor = site.translated(&delta[..self.dim]);
                if let Some(&j) = self.index.get(&neighbor) {
                    let c = if dir == 1 {
                        self.cond[i as usize][k]
                    } else {
                        self.cond[j as usize][k]
                    };
                    if c > 0.0 {
                        out.push((neighbor, c / qx));
                    }
                }
            }
        }
        Ok(out)
    }

    /// One-step draw of the derived walk.
    pub fn step(&self, site: &Site, u: f64) -> Result<Site> {
        let succ = self.successors(site)?;
        let mut acc = 0.0;
        for (y, p) in &succ {
            acc += p;
            if u < acc {
                return Ok(*y);
            }
        }
        Ok(succ.last().expect("successor list never empty").0)
    }

    /// All undirected edges `(x, y, c)` with `y = x + e_k`, in site order.
    pub fn edges(&self) -> Vec<(Site, Site, f64)> {
        let mut out = Vec::new();
        for (i, site) in self.sites.iter().enumerate() {
            for k in 0..self.dim {
                let mut delta = [0i64; MAX_DIM];
                delta[k] = 1;
                let neighbor = site.translated(&delta[..self.dim]);
                if self.index.contains_key(&neighbor) {
                    out.push((*site, neighbor, self.cond[i][k]));
                }
            }
        }
        out
    }

    /// Writes the environment as an edge-list text file: one line per edge
    /// holding the coordinates of both endpoints and the conductance.
    pub fn export_edge_list(&self, w: &mut impl Write) -> std::io::Result<()> {
        for (x, y, c) in self.edges() {
            let mut fields = Vec::new();
            for v in coords_of(&x)[..self.dim].iter() {
                fields.push(v.to_string());
            }
            for v in coords_of(&y)[..self.dim].iter() {
                fields.push(v.to_string());
            }
            fields.push(crate::analysis::report::fmt_f64(c));
            writeln!(w, "{}", fields.join(" "))?;
        }
        Ok(())
    }

    /// True when some site of `cluster` lies on the boundary of the box
    /// (the finite-volume stand-in for an infinite cluster).
    pub fn cluster_touches_boundary(&self, cluster: &BTreeSet<Site>) -> bool {
        let (lo, hi) = self.window.bounding_box();
        cluster.iter().any(|s| {
            let c = coords_of(s);
            (0..self.dim).any(|k| c[k] == lo[k] || c[k] == hi[k])
        })
    }
}

fn coords_of(site: &Site) -> [i64; MAX_DIM] {
    match site {
        Site::Lattice { coords, .. } => *coords,
        Site::Comb { .. } => panic!("conductance sites are lattice points"),
    }
}

/// Connected component of `v` through strictly positive conductances,
/// within the box.
pub fn compute_cluster(env: &EnvSample, v: &Site) -> Result<BTreeSet<Site>> {
    if !env.index.contains_key(v) {
        return Err(FrogError::InvalidParameter {
            name: "v",
            reason: format!("site {v} is outside the environment box"),
        });
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(*v);
    queue.push_back(*v);
    while let Some(x) = queue.pop_front() {
        let i = env.index[&x] as usize;
        for k in 0..env.dim {
            for dir in [1i64, -1] {
                let mut delta = [0i64; MAX_DIM];
                delta[k] = dir;
                let neighbor = x.translated(&delta[..env.dim]);
                let Some(&j) = env.index.get(&neighbor) else {
                    continue;
                };
                let c = if dir == 1 {
                    env.cond[i][k]
                } else {
                    env.cond[j as usize][k]
                };
                if c > 0.0 && seen.insert(neighbor) {
                    queue.push_back(neighbor);
                }
            }
        }
    }
    Ok(seen)
}
