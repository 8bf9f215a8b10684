//! Deformations that carry arbitrary configurations onto the first axis.
//!
//! [`desingularize`] separates coincident projections with small shifts along
//! `e_1`; [`phi`] then flattens a configuration with pairwise distinct
//! projections straight down onto the axis. Both fix the obstacles.

use std::fmt;
use std::sync::Arc;

use crate::config::{stratum, stratum_with_tolerance, Configuration, ProblemSpec, StratumInfo};
use crate::error::{Error, Result};

/// A deformation evaluable at any `t` in `[0, 1]`, identity at `t = 0`.
pub trait Homotopy: fmt::Debug + Send + Sync {
    fn eval(&self, c: &Configuration, t: f64) -> Result<Configuration>;

    /// Names of the stages composing this homotopy, in playback order.
    fn stages(&self) -> Vec<&'static str>;
}

/// Straight-line flattening onto the first axis. Requires `cp = k + r`.
pub fn phi(spec: &ProblemSpec, c: &Configuration, t: f64) -> Result<Configuration> {
    let info = stratum(spec, c);
    if info.cp != spec.points() {
        return Err(Error::NotGeneric {
            cp: info.cp,
            required: spec.points(),
        });
    }
    Ok(flatten(c, t))
}

fn flatten(c: &Configuration, t: f64) -> Configuration {
    if t == 0.0 {
        return c.clone();
    }
    let mut out = c.clone();
    for i in 0..c.robots() {
        let p = out.point_mut(i);
        for x in &mut p[1..] {
            *x += t * (0.0 - *x);
        }
    }
    out
}

/// Shifts robot with global index `j` by `t (j - 1) epsilon` along `e_1`.
/// Identity when the configuration already has `cp = k + r`.
pub fn desingularize(
    spec: &ProblemSpec,
    c: &Configuration,
    info: &StratumInfo,
    t: f64,
) -> Configuration {
    if info.cp == spec.points() || t == 0.0 {
        return c.clone();
    }
    let mut out = c.clone();
    for i in 0..c.robots() {
        let j = spec.global_index(i);
        out.point_mut(i)[0] += t * (j - 1) as f64 * info.epsilon;
    }
    out
}

/// [`desingularize`] as a homotopy; the stratum is taken from the input at `t = 0`.
#[derive(Debug, Clone)]
pub struct Desingularization {
    spec: ProblemSpec,
}

impl Desingularization {
    pub fn new(spec: &ProblemSpec) -> Self {
        Self { spec: spec.clone() }
    }
}

impl Homotopy for Desingularization {
    fn eval(&self, c: &Configuration, t: f64) -> Result<Configuration> {
        let info = stratum(&self.spec, c);
        Ok(desingularize(&self.spec, c, &info, t))
    }

    fn stages(&self) -> Vec<&'static str> {
        vec!["desingularize"]
    }
}

/// [`phi`] as a homotopy.
///
/// When built with [`Flattening::exact`], the precondition is checked with zero
/// projection tolerance instead of `tol_proj`; that is what the planner uses, so
/// inputs whose projections are closer than `tol_proj` after desingularization
/// are still flattened as long as they stay distinct.
#[derive(Debug, Clone)]
pub struct Flattening {
    spec: ProblemSpec,
    exact: bool,
}

impl Flattening {
    pub fn new(spec: &ProblemSpec) -> Self {
        Self {
            spec: spec.clone(),
            exact: false,
        }
    }

    pub fn exact(spec: &ProblemSpec) -> Self {
        Self {
            spec: spec.clone(),
            exact: true,
        }
    }
}

impl Homotopy for Flattening {
    fn eval(&self, c: &Configuration, t: f64) -> Result<Configuration> {
        if !self.exact {
            return phi(&self.spec, c, t);
        }
        let info = stratum_with_tolerance(&self.spec, c, 0.0);
        if info.cp != self.spec.points() {
            return Err(Error::NotGeneric {
                cp: info.cp,
                required: self.spec.points(),
            });
        }
        Ok(flatten(c, t))
    }

    fn stages(&self) -> Vec<&'static str> {
        vec!["flatten"]
    }
}

/// Plays `first` then `second`, each at double speed.
#[derive(Debug, Clone)]
pub struct Concatenated {
    first: Arc<dyn Homotopy>,
    second: Arc<dyn Homotopy>,
}

pub fn concat_homotopy(first: Arc<dyn Homotopy>, second: Arc<dyn Homotopy>) -> Concatenated {
    Concatenated { first, second }
}

impl Homotopy for Concatenated {
    fn eval(&self, c: &Configuration, t: f64) -> Result<Configuration> {
        if t <= 0.5 {
            self.first.eval(c, 2.0 * t)
        } else {
            let mid = self.first.eval(c, 1.0)?;
            self.second.eval(&mid, 2.0 * t - 1.0)
        }
    }

    fn stages(&self) -> Vec<&'static str> {
        let mut s = self.first.stages();
        s.extend(self.second.stages());
        s
    }
}

/// The per-waypoint deformation used by the planner: desingularize, then flatten.
pub fn axis_deformation(spec: &ProblemSpec) -> Arc<dyn Homotopy> {
    Arc::new(concat_homotopy(
        Arc::new(Desingularization::new(spec)),
        Arc::new(Flattening::exact(spec)),
    ))
}
