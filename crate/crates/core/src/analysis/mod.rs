//! Numeric diagnostics layered on top of the simulator.

pub mod coverage;
pub mod factor;
pub mod moments;
pub mod raabe;
pub mod reach;
pub mod recurrence;
pub mod report;
pub mod series;

pub use coverage::{coverage_profile, stopped_drift_factory, CoveragePoint, CoverageReport};
pub use factor::{factor_invariant_measure, factor_invariant_measure_truncated, FactorMeasure};
pub use moments::{log_moment, log_moment_quadrature, LogMomentValue};
pub use raabe::{default_sphere_constants, raabe_ratio_table, RaabeRow, RaabeTable};
pub use reach::{reach_weight, reach_weight_brute_force, MarkedGraph, ReachWeight};
pub use recurrence::{
    classify_recurrence, recurrence_stat_from_counts, recurrence_statistic, Classification,
    RecurrenceGroup, RecurrenceStat,
};
pub use series::{series_oracle, SeriesOracleReport, Verdict, YSampler};
