//! Problem files: JSON documents holding the problem size, optional
//! tolerances and an `n x k x d` array of waypoints.

use serde::Deserialize;

use seqplan::config::{DEFAULT_TOL_PROJ, DEFAULT_TOL_VALID};
use seqplan::{Configuration, PlanRequest, ProblemSpec};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub d: usize,
    pub k: usize,
    pub r: usize,
    pub n: usize,
    #[serde(default)]
    pub tol_proj: Option<f64>,
    #[serde(default)]
    pub tol_valid: Option<f64>,
    pub waypoints: Vec<Vec<Vec<f64>>>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn spec(&self) -> Result<ProblemSpec, CliError> {
        ProblemSpec::with_tolerances(
            self.d,
            self.k,
            self.r,
            self.n,
            self.tol_proj.unwrap_or(DEFAULT_TOL_PROJ),
            self.tol_valid.unwrap_or(DEFAULT_TOL_VALID),
        )
        .map_err(CliError::from)
    }

    /// Checks the waypoint array shape and builds the request. Separation is
    /// checked later by the planner.
    pub fn request(&self) -> Result<PlanRequest, CliError> {
        let spec = self.spec()?;
        if self.waypoints.len() != spec.n() {
            return Err(CliError::Parse(format!(
                "waypoints: expected {} entries, found {}",
                spec.n(),
                self.waypoints.len()
            )));
        }
        let mut configs = Vec::with_capacity(spec.n());
        for (m, w) in self.waypoints.iter().enumerate() {
            if w.len() != spec.k() {
                return Err(CliError::Parse(format!(
                    "waypoint {}: expected {} robots, found {}",
                    m + 1,
                    spec.k(),
                    w.len()
                )));
            }
            for (i, p) in w.iter().enumerate() {
                if p.len() != spec.d() {
                    return Err(CliError::Parse(format!(
                        "waypoint {}, robot {}: expected {} coordinates, found {}",
                        m + 1,
                        i + 1,
                        spec.d(),
                        p.len()
                    )));
                }
                if p.iter().any(|x| !x.is_finite()) {
                    return Err(CliError::Parse(format!(
                        "waypoint {}, robot {}: non-finite coordinate",
                        m + 1,
                        i + 1
                    )));
                }
            }
            configs.push(
                Configuration::from_points(w)
                    .map_err(|e| CliError::Parse(format!("waypoint {}: {e}", m + 1)))?,
            );
        }
        Ok(PlanRequest::new(spec, configs))
    }
}

pub fn load(path: &std::path::Path) -> Result<PlanRequest, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    ProblemFile::parse(&text)?.request()
}
