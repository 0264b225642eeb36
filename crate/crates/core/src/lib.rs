//! Interval-valued functions on `I([0,1])` and exhaustive checking of
//! abstract homogeneity laws over endpoint grids.
//!
//! Everything is generic over [`Endpoint`]: use [`Rational`] for exact checks
//! and `f64` for tolerance-based ones.

pub mod dsl;
pub mod endpoint;
pub mod functions;
pub mod grid;
pub mod homogeneity;
pub mod interval;
pub mod registry;
pub mod report;
pub mod sweep;

pub use endpoint::{Endpoint, NumericMode, Rational};
pub use functions::{dual_ns, dual_scaling_ns, section, IvFunction, OrderIso, ScalingFunction, Section};
pub use grid::{Grid, GridError};
pub use homogeneity::{
    check_fixed_point, check_homogeneity, check_idempotency, check_order_iso, check_pointwise_equal,
    check_scalings_equal, check_section_bijective, run_dual_transfer, run_idempotency_transfer,
};
pub use interval::{compare, Interval, IntervalError, IntervalOrder};
pub use report::{CheckReport, Counterexample, IntervalText, PipelineReport, PipelineStatus, Stage, StageRole, Verdict};
pub use sweep::{CheckError, CheckOptions};
