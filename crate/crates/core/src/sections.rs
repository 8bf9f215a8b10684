//! Sections over on-axis configurations and the deformation glue.
//!
//! The ladder path lifts robot `i` (global index) to height `i` along `e_2`,
//! slides it horizontally to its target, then lowers it. Distinct heights keep
//! robots apart during the slide; distinct first coordinates keep them apart
//! while moving vertically.

use std::sync::Arc;

use crate::config::{ensure_valid, Configuration, ProblemSpec};
use crate::deform::Homotopy;
use crate::error::{Error, Result};
use crate::path::{concat_paths, Motion, PiecewisePath, Segment};

fn check_on_axis(spec: &ProblemSpec, c: &Configuration) -> Result<()> {
    ensure_valid(spec, c)?;
    for (i, p) in c.points().enumerate() {
        if p[1..].iter().any(|&x| x != 0.0) {
            return Err(Error::OffAxis { robot: i + 1 });
        }
    }
    Ok(())
}

fn lifted(spec: &ProblemSpec, c: &Configuration) -> Configuration {
    let mut out = c.clone();
    for i in 0..c.robots() {
        out.point_mut(i)[1] += spec.global_index(i) as f64;
    }
    out
}

/// Evaluates the ladder path from `from` to `to` at `t`, branch by branch.
pub fn gamma(
    spec: &ProblemSpec,
    from: &Configuration,
    to: &Configuration,
    t: f64,
) -> Result<Configuration> {
    check_on_axis(spec, from)?;
    check_on_axis(spec, to)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange(t));
    }
    let mut out = from.clone();
    for i in 0..from.robots() {
        let height = spec.global_index(i) as f64;
        let (x, x2) = (from.point(i), to.point(i));
        let p = out.point_mut(i);
        if t <= 1.0 / 3.0 {
            p.copy_from_slice(x);
            p[1] += 3.0 * t * height;
        } else if t <= 2.0 / 3.0 {
            let s = 3.0 * t - 1.0;
            for (c, (a, b)) in p.iter_mut().zip(x.iter().zip(x2)) {
                *c = a + s * (b - a);
            }
            p[1] += height;
        } else {
            p.copy_from_slice(x2);
            p[1] += height * (3.0 - 3.0 * t);
        }
    }
    Ok(out)
}

/// The ladder path as three affine segments: lift, slide, lower.
pub fn gamma_path(
    spec: &ProblemSpec,
    from: &Configuration,
    to: &Configuration,
) -> Result<PiecewisePath> {
    check_on_axis(spec, from)?;
    check_on_axis(spec, to)?;
    let up_from = lifted(spec, from);
    let up_to = lifted(spec, to);
    let third = 1.0 / 3.0;
    let two_thirds = 2.0 / 3.0;
    PiecewisePath::new(vec![
        Segment {
            start: 0.0,
            end: third,
            motion: Motion::Affine {
                from: from.clone(),
                to: up_from.clone(),
            },
        },
        Segment {
            start: third,
            end: two_thirds,
            motion: Motion::Affine {
                from: up_from,
                to: up_to.clone(),
            },
        },
        Segment {
            start: two_thirds,
            end: 1.0,
            motion: Motion::Affine {
                from: up_to,
                to: to.clone(),
            },
        },
    ])
}

/// Ladder paths between consecutive on-axis waypoints, one per `1 / (n - 1)`.
pub fn gamma_n(spec: &ProblemSpec, waypoints: &[Configuration]) -> Result<PiecewisePath> {
    if waypoints.len() < 2 {
        return Err(Error::WaypointCount {
            expected: spec.n().max(2),
            found: waypoints.len(),
        });
    }
    let legs = waypoints
        .windows(2)
        .map(|w| gamma_path(spec, &w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    concat_paths(&legs)
}

/// A path-producing rule over a tuple of waypoints.
pub trait Section {
    fn section(&self, waypoints: &[Configuration]) -> Result<PiecewisePath>;
}

/// [`gamma_n`] as a [`Section`].
#[derive(Debug, Clone)]
pub struct LadderSection {
    spec: ProblemSpec,
}

impl LadderSection {
    pub fn new(spec: &ProblemSpec) -> Self {
        Self { spec: spec.clone() }
    }
}

impl Section for LadderSection {
    fn section(&self, waypoints: &[Configuration]) -> Result<PiecewisePath> {
        gamma_n(&self.spec, waypoints)
    }
}

/// Transfers `inner` along a factor-wise deformation of the waypoints.
///
/// `deformations[m]` moves `waypoints[m]` into the domain of `inner`. On each leg
/// `[m / (n - 1), (m + 1) / (n - 1)]` the result plays, in thirds, the deformation
/// of waypoint `m` forward, the matching leg of the inner section, and the
/// deformation of waypoint `m + 1` backward.
pub fn glue(
    deformations: &[Arc<dyn Homotopy>],
    waypoints: &[Configuration],
    inner: &dyn Section,
) -> Result<PiecewisePath> {
    let n = waypoints.len();
    if n < 2 || deformations.len() != n {
        return Err(Error::WaypointCount {
            expected: deformations.len().max(2),
            found: n,
        });
    }
    let deformed = deformations
        .iter()
        .zip(waypoints)
        .map(|(h, y)| h.eval(y, 1.0))
        .collect::<Result<Vec<_>>>()?;
    let inner = Arc::new(inner.section(&deformed)?);

    let legs = n - 1;
    let thirds = 3 * legs;
    let at = |num: usize| num as f64 / thirds as f64;
    let mut segments = Vec::with_capacity(thirds);
    for m in 0..legs {
        segments.push(Segment {
            start: at(3 * m),
            end: at(3 * m + 1),
            motion: Motion::Deform {
                deformation: deformations[m].clone(),
                base: waypoints[m].clone(),
                reverse: false,
            },
        });
        segments.push(Segment {
            start: at(3 * m + 1),
            end: at(3 * m + 2),
            motion: Motion::Sub {
                path: inner.clone(),
                from: m as f64 / legs as f64,
                to: (m + 1) as f64 / legs as f64,
            },
        });
        segments.push(Segment {
            start: at(3 * m + 2),
            end: at(3 * m + 3),
            motion: Motion::Deform {
                deformation: deformations[m + 1].clone(),
                base: waypoints[m + 1].clone(),
                reverse: true,
            },
        });
    }
    PiecewisePath::new(segments)
}
