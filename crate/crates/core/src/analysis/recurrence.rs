//! Distinct-visitor statistics and the recurrence classification heuristic.

use crate::error::FrogError;
use crate::site::Site;
use crate::trace::ActivationTrace;
use crate::Result;
use serde::Serialize;

/// Distinct-origin visitor counts for one `(box radius, horizon)` cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceGroup {
    pub box_radius: u32,
    pub horizon: u32,
    /// One count per replicate, in input order.
    pub counts: Vec<u64>,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

/// Summary of distinct-origin visitor counts over a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceStat {
    pub target: String,
    pub groups: Vec<RecurrenceGroup>,
}

/// Median of a sorted slice (mean of the middle pair for even lengths).
fn median_sorted(v: &[u64]) -> f64 {
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] as f64 + v[n / 2] as f64) / 2.0
    }
}

/// Tukey hinges: quartiles are medians of the inclusive halves.
fn quartiles(sorted: &[u64]) -> (f64, f64, f64) {
    let n = sorted.len();
    let med = median_sorted(sorted);
    let half = n.div_ceil(2);
    let q1 = median_sorted(&sorted[..half]);
    let q3 = median_sorted(&sorted[n - half..]);
    (q1, med, q3)
}

/// Aggregates raw distinct-origin counts keyed by `(box radius, horizon)`.
pub fn recurrence_stat_from_counts(
    target: String,
    mut cells: Vec<((u32, u32), Vec<u64>)>,
) -> Result<RecurrenceStat> {
    if cells.is_empty() || cells.iter().any(|(_, v)| v.is_empty()) {
        return Err(FrogError::EmptyInput {
            what: "recurrence counts",
        });
    }
    cells.sort_by_key(|(k, _)| *k);
    let groups = cells
        .into_iter()
        .map(|((box_radius, horizon), counts)| {
            let mut sorted = counts.clone();
            sorted.sort_unstable();
            let (q1, median, q3) = quartiles(&sorted);
            RecurrenceGroup {
                box_radius,
                horizon,
                counts,
                median,
                q1,
                q3,
            }
        })
        .collect();
    Ok(RecurrenceStat { target, groups })
}

/// Aggregates distinct-origin visitor counts of `target` over labeled runs.
///
/// Each run is `(box radius, trace)`; the trace's horizon supplies the other
/// grouping key. The count of a run is the number of distinct origins other
/// than the target itself with a recorded visit to the target.
pub fn recurrence_statistic(
    runs: &[(u32, ActivationTrace)],
    target: &Site,
) -> Result<RecurrenceStat> {
    if runs.is_empty() {
        return Err(FrogError::EmptyInput {
            what: "recurrence runs",
        });
    }
    let mut cells: Vec<((u32, u32), Vec<u64>)> = Vec::new();
    for (radius, trace) in runs {
        let key = (*radius, trace.horizon());
        let n = trace.distinct_visiting_origins(target);
        match cells.iter_mut().find(|(k, _)| *k == key) {
            Some((_, list)) => list.push(n),
            None => cells.push((key, vec![n])),
        }
    }
    recurrence_stat_from_counts(target.to_string(), cells)
}

/// Outcome of the finite-scale classification heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    RecurrentLike,
    TransientLike,
    Indeterminate,
}

/// Maximum median movement allowed over the top half of the grid for a
/// transient-like call.
pub const TRANSIENT_MEDIAN_SLACK: f64 = 2.0;

/// Classification heuristic over a radius grid at matched horizons:
/// "recurrent-like" when the median strictly increases along every step of
/// the grid; "transient-like" when the median moves by at most
/// [`TRANSIENT_MEDIAN_SLACK`] over the top half of the grid. These
/// thresholds are finite-scale artifacts, reported alongside the raw data,
/// never silently.
pub fn classify_recurrence(stat: &RecurrenceStat) -> Result<Classification> {
    let groups = &stat.groups;
    if groups.len() < 2 {
        return Err(FrogError::EmptyInput {
            what: "classification needs at least two grid points",
        });
    }
    let strictly_increasing = groups.windows(2).all(|w| w[1].median > w[0].median);
    if strictly_increasing {
        return Ok(Classification::RecurrentLike);
    }
    let top = &groups[groups.len() - groups.len().div_ceil(2)..];
    let lo = top.iter().map(|g| g.median).fold(f64::INFINITY, f64::min);
    let hi = top
        .iter()
        .map(|g| g.median)
        .fold(f64::NEG_INFINITY, f64::max);
    if hi - lo <= TRANSIENT_MEDIAN_SLACK {
        Ok(Classification::TransientLike)
    } else {
        Ok(Classification::Indeterminate)
    }
}
