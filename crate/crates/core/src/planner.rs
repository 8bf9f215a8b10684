//! End-to-end planning: stratify the waypoints, deform them onto the axis, run
//! the ladder section there and glue the pieces back together.

use serde::Serialize;

use crate::config::{distance, stratum, validate_configuration, Configuration, ProblemSpec};
use crate::deform::axis_deformation;
use crate::error::{Error, Result};
use crate::path::PiecewisePath;
use crate::sections::{glue, LadderSection};

/// Uniform samples used by [`plan`] to validate its own output.
pub const DEFAULT_VALIDATION_SAMPLES: usize = 10_000;

/// Largest admissible gap between the path and a waypoint at its time slot.
pub const WAYPOINT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct PlanRequest {
    pub spec: ProblemSpec,
    pub waypoints: Vec<Configuration>,
}

impl PlanRequest {
    pub fn new(spec: ProblemSpec, waypoints: Vec<Configuration>) -> Self {
        Self { spec, waypoints }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationStats {
    pub samples: usize,
    /// `None` when there is a single robot.
    pub min_robot_robot: Option<f64>,
    pub min_robot_obstacle: f64,
    pub max_waypoint_deviation: f64,
    pub evaluation_failures: usize,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct PlanReport {
    /// `cp` of every waypoint.
    pub strata: Vec<usize>,
    /// Sum of the strata, the index of the domain of continuity used.
    pub region: usize,
    pub path: PiecewisePath,
    pub validation: ValidationStats,
}

/// Time slot of waypoint `m` (0-based) among `n`.
pub fn waypoint_time(m: usize, n: usize) -> f64 {
    m as f64 / (n - 1) as f64
}

fn check_waypoints(spec: &ProblemSpec, waypoints: &[Configuration]) -> Result<()> {
    if waypoints.len() != spec.n() {
        return Err(Error::WaypointCount {
            expected: spec.n(),
            found: waypoints.len(),
        });
    }
    for (index, c) in waypoints.iter().enumerate() {
        if let Err(violation) = validate_configuration(spec, c)? {
            return Err(Error::InvalidWaypoint {
                index: index + 1,
                violation,
            });
        }
    }
    Ok(())
}

/// Strata of the waypoints and their sum.
pub fn region_index(
    spec: &ProblemSpec,
    waypoints: &[Configuration],
) -> Result<(Vec<usize>, usize)> {
    check_waypoints(spec, waypoints)?;
    let strata: Vec<usize> = waypoints.iter().map(|c| stratum(spec, c).cp).collect();
    let region = strata.iter().sum();
    Ok((strata, region))
}

/// Builds the planned path without validating it.
pub fn build_path(spec: &ProblemSpec, waypoints: &[Configuration]) -> Result<PiecewisePath> {
    check_waypoints(spec, waypoints)?;
    let h = axis_deformation(spec);
    let deformations = vec![h; waypoints.len()];
    glue(&deformations, waypoints, &LadderSection::new(spec))
}

pub fn plan(request: &PlanRequest) -> Result<PlanReport> {
    plan_with_samples(request, DEFAULT_VALIDATION_SAMPLES)
}

pub fn plan_with_samples(request: &PlanRequest, samples: usize) -> Result<PlanReport> {
    let spec = &request.spec;
    if spec.r() < 2 {
        return Err(Error::UnsupportedRegime { r: spec.r() });
    }
    let (strata, region) = region_index(spec, &request.waypoints)?;
    let path = build_path(spec, &request.waypoints)?;
    let validation = validate_path(spec, &path, &request.waypoints, samples);
    Ok(PlanReport {
        strata,
        region,
        path,
        validation,
    })
}

/// `m` uniform parameters in `[0, 1]` merged with every breakpoint of `path`.
pub fn sample_times(path: &PiecewisePath, m: usize) -> Vec<f64> {
    let m = m.max(2);
    let mut taus: Vec<f64> = (0..m).map(|i| i as f64 / (m - 1) as f64).collect();
    taus.extend(path.breakpoints());
    taus.sort_by(f64::total_cmp);
    taus.dedup();
    taus
}

pub fn sample_path(path: &PiecewisePath, m: usize) -> Result<Vec<(f64, Configuration)>> {
    sample_times(path, m)
        .into_iter()
        .map(|tau| Ok((tau, path.eval(tau)?)))
        .collect()
}

/// Smallest robot/robot and robot/obstacle distances in one configuration.
pub fn clearances(spec: &ProblemSpec, c: &Configuration) -> (Option<f64>, f64) {
    let mut robots: Option<f64> = None;
    let mut obstacles = f64::INFINITY;
    for i in 0..c.robots() {
        let p = c.point(i);
        for q in spec.obstacles() {
            obstacles = obstacles.min(distance(p, q));
        }
        for j in i + 1..c.robots() {
            let dist = distance(p, c.point(j));
            robots = Some(robots.map_or(dist, |m| m.min(dist)));
        }
    }
    (robots, obstacles)
}

/// Samples `path` densely and reports clearances and waypoint deviations.
pub fn validate_path(
    spec: &ProblemSpec,
    path: &PiecewisePath,
    waypoints: &[Configuration],
    sample_count: usize,
) -> ValidationStats {
    let taus = sample_times(path, sample_count);
    let mut min_rr: Option<f64> = None;
    let mut min_ro = f64::INFINITY;
    let mut failures = 0;
    for &tau in &taus {
        match path.eval(tau) {
            Ok(c) => {
                let (rr, ro) = clearances(spec, &c);
                if let Some(rr) = rr {
                    min_rr = Some(min_rr.map_or(rr, |m| m.min(rr)));
                }
                min_ro = min_ro.min(ro);
            }
            Err(_) => failures += 1,
        }
    }

    let n = waypoints.len();
    let mut deviation: f64 = 0.0;
    for (m, y) in waypoints.iter().enumerate() {
        let tau = if n < 2 { 0.0 } else { waypoint_time(m, n) };
        match path.eval(tau) {
            Ok(c) => deviation = deviation.max(c.max_abs_diff(y)),
            Err(_) => {
                failures += 1;
                deviation = f64::INFINITY;
            }
        }
    }

    let pass = failures == 0
        && min_rr.is_none_or(|m| m > 0.0)
        && min_ro > 0.0
        && deviation <= WAYPOINT_TOLERANCE;
    ValidationStats {
        samples: taus.len(),
        min_robot_robot: min_rr,
        min_robot_obstacle: min_ro,
        max_waypoint_deviation: deviation,
        evaluation_failures: failures,
        pass,
    }
}
