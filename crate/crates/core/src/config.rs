//! Problem and configuration data model.
//!
//! Obstacles sit at the canonical positions `q_i = (i - 1, 0, ..., 0)`, so the
//! obstacle projections onto the first axis are `0, 1, ..., r - 1`. Robots carry
//! global indices `r + 1, ..., r + k` after the obstacles; every index reported by
//! [`StratumInfo`] uses that global numbering.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_TOL_PROJ: f64 = 1e-9;
pub const DEFAULT_TOL_VALID: f64 = 1e-9;

/// Dimensions, counts and tolerances of one planning problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemSpec {
    d: usize,
    k: usize,
    r: usize,
    n: usize,
    tol_proj: f64,
    tol_valid: f64,
    obstacles: Vec<Vec<f64>>,
}

impl ProblemSpec {
    /// Builds a problem with the default tolerances.
    pub fn new(d: usize, k: usize, r: usize, n: usize) -> Result<Self> {
        Self::with_tolerances(d, k, r, n, DEFAULT_TOL_PROJ, DEFAULT_TOL_VALID)
    }

    pub fn with_tolerances(
        d: usize,
        k: usize,
        r: usize,
        n: usize,
        tol_proj: f64,
        tol_valid: f64,
    ) -> Result<Self> {
        if r < 2 {
            return Err(Error::UnsupportedRegime { r });
        }
        if d < 2 {
            return Err(Error::InvalidProblem(format!(
                "dimension d = {d} must be at least 2"
            )));
        }
        if k < 1 {
            return Err(Error::InvalidProblem(
                "robot count k must be at least 1".into(),
            ));
        }
        if n < 2 {
            return Err(Error::InvalidProblem(format!(
                "waypoint count n = {n} must be at least 2"
            )));
        }
        let max_tol = 1.0 / (4.0 * (k + r) as f64);
        if !(tol_proj >= 0.0 && tol_proj < max_tol) {
            return Err(Error::InvalidProblem(format!(
                "tol_proj = {tol_proj} must lie in [0, {max_tol})"
            )));
        }
        if !(tol_valid >= 0.0 && tol_valid.is_finite()) {
            return Err(Error::InvalidProblem(format!(
                "tol_valid = {tol_valid} must be >= 0"
            )));
        }
        let obstacles = (0..r)
            .map(|i| {
                let mut q = vec![0.0; d];
                q[0] = i as f64;
                q
            })
            .collect();
        Ok(Self {
            d,
            k,
            r,
            n,
            tol_proj,
            tol_valid,
            obstacles,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tol_proj(&self) -> f64 {
        self.tol_proj
    }

    pub fn tol_valid(&self) -> f64 {
        self.tol_valid
    }

    pub fn obstacles(&self) -> &[Vec<f64>] {
        &self.obstacles
    }

    /// Total number of points, robots plus obstacles.
    pub fn points(&self) -> usize {
        self.k + self.r
    }

    /// Global (1-based) index of robot `robot` (0-based).
    pub fn global_index(&self, robot: usize) -> usize {
        self.r + robot + 1
    }

    /// Smallest and largest possible region index, `n r` and `n (k + r)`.
    pub fn region_bounds(&self) -> (usize, usize) {
        (self.n * self.r, self.n * (self.k + self.r))
    }

    /// Copy of this problem with a different projection tolerance.
    pub fn with_tol_proj(&self, tol_proj: f64) -> Result<Self> {
        Self::with_tolerances(self.d, self.k, self.r, self.n, tol_proj, self.tol_valid)
    }
}

/// Ordered positions of the `k` robots, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    dim: usize,
    coords: Vec<f64>,
}

impl Configuration {
    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.as_ref().len());
        let mut coords = Vec::with_capacity(dim * points.len());
        for (robot, p) in points.iter().enumerate() {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    robot: robot + 1,
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Ok(Self { dim, coords })
    }

    pub(crate) fn from_flat(dim: usize, coords: Vec<f64>) -> Self {
        debug_assert!(dim > 0 && coords.len().is_multiple_of(dim));
        Self { dim, coords }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn robots(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn point(&self, robot: usize) -> &[f64] {
        &self.coords[robot * self.dim..(robot + 1) * self.dim]
    }

    pub(crate) fn point_mut(&mut self, robot: usize) -> &mut [f64] {
        &mut self.coords[robot * self.dim..(robot + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim.max(1))
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn to_points(&self) -> Vec<Vec<f64>> {
        self.points().map(<[f64]>::to_vec).collect()
    }

    /// Largest coordinate difference between two configurations of the same shape.
    pub fn max_abs_diff(&self, other: &Configuration) -> f64 {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// True when every robot has zero non-first coordinates.
    pub fn is_on_axis(&self) -> bool {
        self.points().all(|p| p[1..].iter().all(|&x| x == 0.0))
    }
}

/// Coordinate projection onto the first axis.
pub fn project(point: &[f64]) -> f64 {
    point[0]
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// First pair that breaks the separation requirement. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    RobotRobot {
        first: usize,
        second: usize,
        distance: f64,
    },
    RobotObstacle {
        robot: usize,
        obstacle: usize,
        distance: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::RobotRobot {
                first,
                second,
                distance,
            } => write!(f, "robots {first} and {second} are {distance:e} apart"),
            Violation::RobotObstacle {
                robot,
                obstacle,
                distance,
            } => write!(f, "robot {robot} is {distance:e} from obstacle {obstacle}"),
        }
    }
}

fn check_shape(spec: &ProblemSpec, c: &Configuration) -> Result<()> {
    if c.robots() != spec.k() {
        return Err(Error::RobotCount {
            expected: spec.k(),
            found: c.robots(),
        });
    }
    if c.dim() != spec.d() {
        return Err(Error::DimensionMismatch {
            robot: 1,
            expected: spec.d(),
            found: c.dim(),
        });
    }
    Ok(())
}

/// Checks the separation invariants. `Ok(Err(v))` names the first violating pair;
/// an outer error means the configuration has the wrong shape.
pub fn validate_configuration(
    spec: &ProblemSpec,
    c: &Configuration,
) -> Result<std::result::Result<(), Violation>> {
    check_shape(spec, c)?;
    if c.coords().iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidProblem("non-finite coordinate".into()));
    }
    let tol = spec.tol_valid();
    for i in 0..spec.k() {
        let p = c.point(i);
        for (j, q) in spec.obstacles().iter().enumerate() {
            let dist = distance(p, q);
            if dist <= tol {
                return Ok(Err(Violation::RobotObstacle {
                    robot: i + 1,
                    obstacle: j + 1,
                    distance: dist,
                }));
            }
        }
        for j in i + 1..spec.k() {
            let dist = distance(p, c.point(j));
            if dist <= tol {
                return Ok(Err(Violation::RobotRobot {
                    first: i + 1,
                    second: j + 1,
                    distance: dist,
                }));
            }
        }
    }
    Ok(Ok(()))
}

/// Convenience wrapper that folds a violation into [`Error::InvalidConfiguration`].
pub fn ensure_valid(spec: &ProblemSpec, c: &Configuration) -> Result<()> {
    validate_configuration(spec, c)?.map_err(Error::InvalidConfiguration)
}

/// Projection-equality data of one configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StratumInfo {
    /// Number of distinct projection values among all `k + r` points.
    pub cp: usize,
    /// Global 1-based indices grouped by equal projection, groups in ascending order.
    pub groups: Vec<Vec<usize>>,
    /// Mean projection of each group.
    pub representatives: Vec<f64>,
    pub epsilon: f64,
}

impl StratumInfo {
    /// Group position of every global index (1-based indices map to slot `index - 1`).
    pub fn group_of(&self) -> Vec<usize> {
        let total = self.groups.iter().map(Vec::len).sum();
        let mut out = vec![0; total];
        for (g, members) in self.groups.iter().enumerate() {
            for &m in members {
                out[m - 1] = g;
            }
        }
        out
    }

    /// True when both infos partition the indices identically.
    pub fn same_pattern(&self, other: &StratumInfo) -> bool {
        self.groups == other.groups
    }
}

/// Classifies `c` by transitive clustering of the `k + r` projections.
pub fn stratum(spec: &ProblemSpec, c: &Configuration) -> StratumInfo {
    stratum_with_tolerance(spec, c, spec.tol_proj())
}

pub(crate) fn stratum_with_tolerance(
    spec: &ProblemSpec,
    c: &Configuration,
    tol: f64,
) -> StratumInfo {
    let mut values: Vec<(f64, usize)> = (0..spec.r())
        .map(|i| (i as f64, i + 1))
        .chain(
            c.points()
                .enumerate()
                .map(|(i, p)| (project(p), spec.global_index(i))),
        )
        .collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut sums: Vec<f64> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (v, idx) in values {
        if groups.is_empty() || v - last > tol {
            groups.push(Vec::new());
            sums.push(0.0);
        }
        groups.last_mut().unwrap().push(idx);
        *sums.last_mut().unwrap() += v;
        last = v;
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    let representatives: Vec<f64> = groups
        .iter()
        .zip(&sums)
        .map(|(g, s)| s / g.len() as f64)
        .collect();
    let min_gap = representatives
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    StratumInfo {
        cp: groups.len(),
        groups,
        representatives,
        epsilon: min_gap / spec.points() as f64,
    }
}

// Spacing used by the generator; comfortably above any admissible tol_proj.
const GEN_MIN_GAP: f64 = 0.02;
const GEN_MIN_HEIGHT: f64 = 0.05;
const GEN_ATTEMPTS: usize = 1000;

/// Deterministic random valid configuration. With `target_cp` the result lies in
/// that stratum exactly; without it all projections are distinct.
pub fn random_configuration(
    spec: &ProblemSpec,
    seed: u64,
    target_cp: Option<usize>,
) -> Result<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_configuration_with(spec, &mut rng, target_cp)
}

pub(crate) fn random_configuration_with<R: Rng>(
    spec: &ProblemSpec,
    rng: &mut R,
    target_cp: Option<usize>,
) -> Result<Configuration> {
    let (k, r) = (spec.k(), spec.r());
    let target = target_cp.unwrap_or(k + r);
    if target < r || target > k + r {
        return Err(Error::TargetCp {
            target,
            min: r,
            max: k + r,
        });
    }
    let gap = GEN_MIN_GAP.max(4.0 * spec.tol_proj());

    for _ in 0..GEN_ATTEMPTS {
        let mut values: Vec<f64> = (0..r).map(|i| i as f64).collect();
        let mut fresh = 0;
        let mut tries = 0;
        while fresh < target - r && tries < GEN_ATTEMPTS {
            tries += 1;
            let v = rng.gen_range(-1.5..r as f64 + 0.5);
            if values.iter().all(|&w| (v - w).abs() >= gap) {
                values.push(v);
                fresh += 1;
            }
        }
        if fresh < target - r {
            continue;
        }

        // Every fresh value needs at least one robot; the rest reuse any value.
        let mut order: Vec<usize> = (0..k).collect();
        order.shuffle(rng);
        let mut proj = vec![0.0; k];
        for (slot, &robot) in order.iter().enumerate() {
            proj[robot] = if slot < fresh {
                values[r + slot]
            } else {
                values[rng.gen_range(0..values.len())]
            };
        }

        let mut heights = vec![0.0; k];
        let mut placed = true;
        for i in 0..k {
            let mut ok = false;
            for _ in 0..GEN_ATTEMPTS {
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                let h = sign * rng.gen_range(GEN_MIN_HEIGHT..2.0);
                let clash =
                    (0..i).any(|j| proj[j] == proj[i] && (heights[j] - h).abs() < GEN_MIN_HEIGHT);
                if !clash {
                    heights[i] = h;
                    ok = true;
                    break;
                }
            }
            if !ok {
                placed = false;
                break;
            }
        }
        if !placed {
            continue;
        }

        let d = spec.d();
        let mut coords = Vec::with_capacity(k * d);
        for i in 0..k {
            coords.push(proj[i]);
            coords.push(heights[i]);
            for _ in 2..d {
                coords.push(rng.gen_range(-1.0..1.0));
            }
        }
        let c = Configuration::from_flat(d, coords);
        if validate_configuration(spec, &c)?.is_ok() && stratum(spec, &c).cp == target {
            return Ok(c);
        }
    }
    Err(Error::Sampling(format!(
        "could not place a configuration with cp = {target}"
    )))
}
