//! Best path-product reach weights on marked graphs.
//!
//! `D(x)` is the maximum over paths `x = x_0, ..., x_m` (vertices may
//! repeat, `m` capped) ending at a marked site of the product of edge
//! weights divided by `m + 1`. `D(x) = 1` exactly when `x` itself is
//! marked, and `D(x) = 0` when no marked site is reachable within the cap.

use crate::error::FrogError;
use crate::Result;

/// A finite weighted directed graph with boolean recurrence marks.
/// Vertices are dense ids `0..n`; weights live in `[0, 1]` and zero-weight
/// edges are treated as absent.
#[derive(Debug, Clone, Default)]
pub struct MarkedGraph {
    adj: Vec<Vec<(u32, f64)>>,
    marks: Vec<bool>,
}

impl MarkedGraph {
    pub fn new(n: usize) -> Self {
        MarkedGraph {
            adj: vec![Vec::new(); n],
            marks: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Sets the directed weight `kappa(u, v)`; weights must lie in `[0, 1]`.
    pub fn set_weight(&mut self, u: u32, v: u32, w: f64) -> Result<()> {
        if u as usize >= self.len() || v as usize >= self.len() {
            return Err(FrogError::InvalidParameter {
                name: "edge",
                reason: format!("edge ({u}, {v}) outside 0..{}", self.len()),
            });
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(FrogError::InvalidParameter {
                name: "weight",
                reason: format!("weight {w} not in [0, 1]"),
            });
        }
        let row = &mut self.adj[u as usize];
        match row.iter_mut().find(|(t, _)| *t == v) {
            Some(entry) => {
                if w > 0.0 {
                    entry.1 = w;
                } else {
                    row.retain(|(t, _)| *t != v);
                }
            }
            None if w > 0.0 => {
                row.push((v, w));
                row.sort_unstable_by_key(|(t, _)| *t);
            }
            None => {}
        }
        Ok(())
    }

    pub fn weight(&self, u: u32, v: u32) -> f64 {
        self.adj[u as usize]
            .iter()
            .find(|(t, _)| *t == v)
            .map(|(_, w)| *w)
            .unwrap_or(0.0)
    }

    pub fn set_mark(&mut self, u: u32, marked: bool) {
        self.marks[u as usize] = marked;
    }

    pub fn mark(&self, u: u32) -> bool {
        self.marks[u as usize]
    }

    pub fn neighbors(&self, u: u32) -> &[(u32, f64)] {
        &self.adj[u as usize]
    }
}

/// A reach weight with its witness path (empty when the value is zero).
#[derive(Debug, Clone, PartialEq)]
pub struct ReachWeight {
    pub value: f64,
    pub witness: Vec<u32>,
}

/// True when `(score_b, path_b)` beats `(score_a, path_a)` under the tie
/// rules: higher score, then shorter path, then lexicographically smaller.
fn better(score_a: f64, path_a: &[u32], score_b: f64, path_b: &[u32]) -> bool {
    if score_b != score_a {
        return score_b > score_a;
    }
    if path_b.len() != path_a.len() {
        return path_b.len() < path_a.len();
    }
    path_b < path_a
}

/// Dynamic program over `(path length, endpoint)`: keeps, for every length
/// `m <= m_max` and endpoint `y`, the maximum path product from `start`
/// (ties resolved lexicographically), then maximizes `product / (m + 1)`
/// over marked endpoints.
pub fn reach_weight(g: &MarkedGraph, start: u32, m_max: u32) -> Result<ReachWeight> {
    if start as usize >= g.len() {
        return Err(FrogError::InvalidParameter {
            name: "start",
            reason: format!("vertex {start} outside 0..{}", g.len()),
        });
    }
    let n = g.len();
    let mut best_value = 0.0f64;
    let mut best_path: Vec<u32> = Vec::new();
    // layer[y] = best (product, path) of the current length ending at y.
    let mut layer: Vec<Option<(f64, Vec<u32>)>> = vec![None; n];
    layer[start as usize] = Some((1.0, vec![start]));
    for m in 0..=m_max {
        for (y, entry) in layer.iter().enumerate() {
            let Some((product, path)) = entry else {
                continue;
            };
            if g.mark(y as u32) && *product > 0.0 {
                let score = product / (m + 1) as f64;
                if best_path.is_empty() && best_value == 0.0
                    || better(best_value, &best_path, score, path)
                {
                    best_value = score;
                    best_path = path.clone();
                }
            }
        }
        if m == m_max {
            break;
        }
        let mut next: Vec<Option<(f64, Vec<u32>)>> = vec![None; n];
        for (z, entry) in layer.iter().enumerate() {
            let Some((product, path)) = entry else {
                continue;
            };
            for (y, w) in g.neighbors(z as u32) {
                let cand_product = product * w;
                if cand_product <= 0.0 {
                    continue;
                }
                let slot = &mut next[*y as usize];
                let replace = match slot {
                    None => true,
                    Some((p, q)) => {
                        cand_product > *p
                            || (cand_product == *p && {
                                // Same length by construction; compare paths.
                                let mut cand = path.clone();
                                cand.push(*y);
                                cand < *q
                            })
                    }
                };
                if replace {
                    let mut cand = path.clone();
                    cand.push(*y);
                    *slot = Some((cand_product, cand));
                }
            }
        }
        layer = next;
    }
    Ok(ReachWeight {
        value: best_value,
        witness: best_path,
    })
}

/// Independent oracle: exhaustive enumeration of every path of length up to
/// `m_max` (vertices may repeat), with the same scoring and tie rules.
pub fn reach_weight_brute_force(g: &MarkedGraph, start: u32, m_max: u32) -> Result<ReachWeight> {
    if start as usize >= g.len() {
        return Err(FrogError::InvalidParameter {
            name: "start",
            reason: format!("vertex {start} outside 0..{}", g.len()),
        });
    }
    let mut best_value = 0.0f64;
    let mut best_path: Vec<u32> = Vec::new();
    let mut path = vec![start];
    fn explore(
        g: &MarkedGraph,
        path: &mut Vec<u32>,
        product: f64,
        left: u32,
        best_value: &mut f64,
        best_path: &mut Vec<u32>,
    ) {
        let y = *path.last().unwrap();
        if g.mark(y) && product > 0.0 {
            let score = product / path.len() as f64;
            if (best_path.is_empty() && *best_value == 0.0)
                || better(*best_value, best_path, score, path)
            {
                *best_value = score;
                *best_path = path.clone();
            }
        }
        if left == 0 {
            return;
        }
        for (z, w) in g.neighbors(y) {
            let p = product * w;
            if p <= 0.0 {
                continue;
            }
            path.push(*z);
            explore(g, path, p, left - 1, best_value, best_path);
            path.pop();
        }
    }
    explore(g, &mut path, 1.0, m_max, &mut best_value, &mut best_path);
    Ok(ReachWeight {
        value: best_value,
        witness: best_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{mix64, RngStream};

    #[test]
    fn marked_start_has_weight_one() {
        let mut g = MarkedGraph::new(3);
        g.set_mark(0, true);
        g.set_weight(0, 1, 0.9).unwrap();
        let r = reach_weight(&g, 0, 5).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.witness, vec![0]);
    }

    #[test]
    fn unreachable_marks_give_zero() {
        let mut g = MarkedGraph::new(4);
        g.set_mark(3, true);
        g.set_weight(0, 1, 0.5).unwrap();
        let r = reach_weight(&g, 0, 6).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn single_edge_halved_by_length() {
        // x -(0.5)-> y with only y marked: D = 0.5 / 2 = 0.25.
        let mut g = MarkedGraph::new(2);
        g.set_weight(0, 1, 0.5).unwrap();
        g.set_mark(1, true);
        let r = reach_weight(&g, 0, 1).unwrap();
        assert_eq!(r.value, 0.25);
        assert_eq!(r.witness, vec![0, 1]);
    }

    fn random_graph(seed: u64, n: usize, out_degree: usize) -> MarkedGraph {
        let rng = RngStream::new(seed);
        let mut g = MarkedGraph::new(n);
        let mut ctr = 0u64;
        let mut state = mix64(seed ^ 0xabcdef);
        for u in 0..n as u32 {
            for _ in 0..out_degree {
                state = mix64(state);
                let v = (state % n as u64) as u32;
                ctr += 1;
                let w = rng.series_variate(ctr, 0);
                g.set_weight(u, v, w).unwrap();
            }
        }
        for u in 0..n as u32 {
            state = mix64(state);
            g.set_mark(u, state.is_multiple_of(5));
        }
        g
    }

    #[test]
    fn dp_matches_brute_force_on_random_graphs() {
        for seed in 0..50u64 {
            let g = random_graph(seed, 12, 3);
            for start in 0..12u32 {
                let a = reach_weight(&g, start, 6).unwrap();
                let b = reach_weight_brute_force(&g, start, 6).unwrap();
                assert_eq!(a.value, b.value, "seed {seed} start {start}");
                assert_eq!(a.witness, b.witness, "seed {seed} start {start}");
            }
        }
    }

    #[test]
    fn adding_marks_and_raising_weights_is_monotone() {
        let base = random_graph(7, 10, 3);
        let values: Vec<f64> = (0..10u32)
            .map(|s| reach_weight(&base, s, 5).unwrap().value)
            .collect();
        let mut marked = base.clone();
        marked.set_mark(4, true);
        let mut raised = base.clone();
        for u in 0..10u32 {
            for (v, w) in base.neighbors(u).to_vec() {
                raised.set_weight(u, v, (w * 1.5).min(1.0)).unwrap();
            }
        }
        for s in 0..10u32 {
            assert!(reach_weight(&marked, s, 5).unwrap().value >= values[s as usize]);
            assert!(reach_weight(&raised, s, 5).unwrap().value >= values[s as usize]);
        }
    }
}
