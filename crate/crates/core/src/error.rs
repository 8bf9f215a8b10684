use thiserror::Error;

use crate::config::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported regime: r = {r} obstacles (planners for r < 2 are not provided)")]
    UnsupportedRegime { r: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("robot {robot} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        robot: usize,
        expected: usize,
        found: usize,
    },

    #[error("expected {expected} robots, found {found}")]
    RobotCount { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(Violation),

    #[error("waypoint {index} is invalid: {violation}")]
    InvalidWaypoint { index: usize, violation: Violation },

    #[error("expected {expected} waypoints, found {found}")]
    WaypointCount { expected: usize, found: usize },

    #[error("flattening needs all projections distinct (cp = {cp}, required {required})")]
    NotGeneric { cp: usize, required: usize },

    #[error("robot {robot} is off the first axis")]
    OffAxis { robot: usize },

    #[error("path {index} ends {gap:e} away from the start of the next path")]
    EndpointMismatch { index: usize, gap: f64 },

    #[error("path parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),

    #[error("target cp {target} outside [{min}, {max}]")]
    TargetCp {
        target: usize,
        min: usize,
        max: usize,
    },

    #[error("strata tuple {0:?} does not fit the problem")]
    StrataMismatch(Vec<usize>),

    #[error("{0}")]
    Sampling(String),
}
