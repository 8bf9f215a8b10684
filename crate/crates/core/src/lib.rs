//! Sequential collision-free motion planning for `k` point robots in `R^d`
//! among `r >= 2` point obstacles.
//!
//! Waypoint tuples are classified by how many distinct first-axis projections
//! each configuration has; the sum of those counts selects one of `n k + 1`
//! domains of continuity, and [`planner::plan`] returns an exactly evaluable
//! path through the waypoints at times `m / (n - 1)`.

pub mod config;
pub mod deform;
pub mod error;
pub mod harness;
pub mod path;
pub mod planner;
pub mod sections;

pub use config::{
    ensure_valid, project, random_configuration, stratum, validate_configuration, Configuration,
    ProblemSpec, StratumInfo, Violation,
};
pub use deform::{concat_homotopy, desingularize, phi, Homotopy};
pub use error::{Error, Result};
pub use path::{concat_paths, Motion, PiecewisePath, Segment};
pub use planner::{
    plan, plan_with_samples, region_index, sample_path, validate_path, PlanReport, PlanRequest,
    ValidationStats,
};
pub use sections::{gamma, gamma_n, gamma_path, glue, Section};
