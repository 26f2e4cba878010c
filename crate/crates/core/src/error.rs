//! Crate-wide error type.

use crate::site::Site;
use thiserror::Error;

/// Errors produced by configuration constructors, samplers and the
/// activation engine.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum FrogError {
    /// A constructor argument violated its documented constraint.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A trajectory query left the configured window budget.
    #[error("trajectory left the window budget at site {site}")]
    WindowExhausted { site: Site },

    /// A trajectory source was queried outside its defined table.
    #[error("trajectory undefined for origin {origin} frog {frog} step {step}")]
    TrajectoryUndefined { origin: Site, frog: u64, step: u32 },

    /// A kernel was asked to step from a site of the wrong geometry.
    #[error("site {site} does not belong to the kernel's state space")]
    GeometryMismatch { site: Site },

    /// Swap surgery requires at least one frog at the site.
    #[error("no frog to swap at site {site}")]
    NoFrogToSwap { site: Site },

    /// The factor chain has no invariant probability measure.
    #[error("no invariant probability measure exists for tooth parameter p2 = {p2}")]
    NoInvariantMeasure { p2: f64 },

    /// An aggregation operation received no input.
    #[error("empty input: {what}")]
    EmptyInput { what: &'static str },

    /// The configuration holds more frogs than the engine can enumerate.
    #[error(
        "configuration holds {total} frogs, more than the engine limit {limit}; cap the counts"
    )]
    TooManyFrogs { total: u128, limit: u64 },

    /// Moment evaluation is not defined for this law/power combination.
    #[error("log-moment of power {power} is not supported for law {law}")]
    UnsupportedMoment { law: String, power: f64 },

    /// A permutation definition is not a bijection.
    #[error("permutation is not invertible: {reason}")]
    InvalidPermutation { reason: String },
}
