//! Simulator and analysis toolkit for activation-spreading particle systems
//! ("frog processes").
//!
//! The system starts with sleeping particles (frogs) placed on a countable
//! state space. Waking the frogs at one site sets off a cascade: active frogs
//! move along their own random trajectories and wake every sleeper they step
//! on. This crate provides
//!
//! * an exact, deterministic-given-trajectories implementation of the
//!   activation wavefront together with the configuration surgeries used to
//!   study it (permutation action, trajectory stopping, extra-frog insertion
//!   and swapping),
//! * constructors for the standard environment families (elliptic drift
//!   kernels, the comb graph, outward-drift kernels, random conductance
//!   environments, heavy-tailed frog-count laws, geometric stopping times)
//!   backed by a counter-based RNG so every run is replayable, and
//! * numeric diagnostics: best path-product reach weights, distinct-visitor
//!   recurrence statistics, birth-death invariant measures, series
//!   convergence oracles, log-moment evaluation, ball-coverage profiles and
//!   ratio-test tables.

pub mod analysis;
pub mod conductance;
pub mod config;
pub mod counts;
pub mod engine;
pub mod error;
pub mod kernel;
pub mod permutation;
pub mod rng;
pub mod site;
pub mod sources;
pub mod stopping;
pub mod trace;
pub mod window;

pub use conductance::{compute_cluster, sample_conductance_env, ConductanceLaw, EnvSample};
pub use config::{add_extra_frog, stop_config, swap_in_extra_frog, FrogConfig};
pub use counts::{sample_counts, CountsLaw, FrogCounts};
pub use engine::{run_activation, wavefront_step};
pub use error::FrogError;
pub use kernel::{
    check_drift_condition, comb_kernel, elliptic_drift_kernel, outward_drift_kernel, DriftReport,
    Kernel, ResidualLaw,
};
pub use permutation::{apply_permutation, Permutation};
pub use rng::RngStream;
pub use site::Site;
pub use sources::{make_sampler, FnSource, TableSource, TrajectorySource};
pub use stopping::{sample_stop_times, StopTimes};
pub use trace::ActivationTrace;
pub use window::Window;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, FrogError>;
