//! Stratum-targeted generators and the randomized probes behind the
//! acceptance runs. Everything here is deterministic per seed.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{
    ensure_valid, random_configuration_with, stratum, validate_configuration, Configuration,
    ProblemSpec,
};
use crate::deform::{desingularize, phi};
use crate::error::{Error, Result};
use crate::planner::{build_path, clearances, plan_with_samples, PlanRequest};
use crate::sections::gamma;

/// Uniform samples compared by [`continuity_probe`].
pub const CONTINUITY_SAMPLES: usize = 256;

const PERTURB_ATTEMPTS: usize = 100;

fn check_strata(spec: &ProblemSpec, strata: &[usize]) -> Result<()> {
    let ok =
        strata.len() == spec.n() && strata.iter().all(|&j| j >= spec.r() && j <= spec.points());
    if ok {
        Ok(())
    } else {
        Err(Error::StrataMismatch(strata.to_vec()))
    }
}

/// One waypoint per entry of `strata`, each in the requested stratum.
pub fn random_waypoints<R: Rng>(
    spec: &ProblemSpec,
    strata: &[usize],
    rng: &mut R,
) -> Result<Vec<Configuration>> {
    check_strata(spec, strata)?;
    strata
        .iter()
        .map(|&j| random_configuration_with(spec, rng, Some(j)))
        .collect()
}

/// A random strata tuple whose entries sum to `region`.
pub fn random_strata<R: Rng>(spec: &ProblemSpec, region: usize, rng: &mut R) -> Result<Vec<usize>> {
    let (lo, hi) = spec.region_bounds();
    if region < lo || region > hi {
        return Err(Error::InvalidProblem(format!(
            "region {region} outside [{lo}, {hi}]"
        )));
    }
    let mut strata = vec![spec.r(); spec.n()];
    for _ in 0..region - lo {
        let open: Vec<usize> = (0..spec.n())
            .filter(|&m| strata[m] < spec.points())
            .collect();
        strata[open[rng.gen_range(0..open.len())]] += 1;
    }
    Ok(strata)
}

/// Moves `c` by at most `delta` per coordinate while keeping its projection
/// pattern: groups move together along `e_1`, groups holding an obstacle stay put.
pub fn perturb_within_pattern<R: Rng>(
    spec: &ProblemSpec,
    c: &Configuration,
    delta: f64,
    rng: &mut R,
) -> Result<Configuration> {
    let info = stratum(spec, c);
    if delta == 0.0 {
        return Ok(c.clone());
    }
    for _ in 0..PERTURB_ATTEMPTS {
        let shifts: Vec<f64> = info
            .groups
            .iter()
            .map(|g| {
                if g.iter().any(|&idx| idx <= spec.r()) {
                    0.0
                } else {
                    rng.gen_range(-delta..=delta)
                }
            })
            .collect();
        let group_of = info.group_of();
        let mut out = c.clone();
        for i in 0..c.robots() {
            let p = out.point_mut(i);
            p[0] += shifts[group_of[spec.global_index(i) - 1]];
            for x in &mut p[1..] {
                *x += rng.gen_range(-delta..=delta);
            }
        }
        if validate_configuration(spec, &out)?.is_ok() && stratum(spec, &out).same_pattern(&info) {
            return Ok(out);
        }
    }
    Err(Error::Sampling(
        "could not perturb while keeping the projection pattern".into(),
    ))
}

/// Largest sup-distance, over `trials` pairs of `delta`-close requests sharing a
/// strata tuple and projection pattern, between their planned paths.
pub fn continuity_probe(
    spec: &ProblemSpec,
    strata: &[usize],
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    check_strata(spec, strata)?;
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::InvalidProblem(format!(
            "delta = {delta} must be >= 0"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let base = random_waypoints(spec, strata, &mut rng)?;
        let moved = base
            .iter()
            .map(|c| perturb_within_pattern(spec, c, delta, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let a = build_path(spec, &base)?;
        let b = build_path(spec, &moved)?;
        for i in 0..CONTINUITY_SAMPLES {
            let tau = i as f64 / (CONTINUITY_SAMPLES - 1) as f64;
            worst = worst.max(a.eval(tau)?.max_abs_diff(&b.eval(tau)?));
        }
    }
    Ok(worst)
}

/// Counts perturbations (at most `tol_proj / 4` per coordinate) that lower `cp`
/// when the perturbed configuration is classified with tolerance `tol_proj / 2`.
pub fn semicontinuity_probe(spec: &ProblemSpec, trials: usize, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = spec.tol_proj() / 4.0;
    let fine = spec.with_tol_proj(spec.tol_proj() / 2.0)?;
    let mut violations = 0;
    for _ in 0..trials {
        let target = rng.gen_range(spec.r()..=spec.points());
        let c = random_configuration_with(spec, &mut rng, Some(target))?;
        let base_cp = stratum(spec, &c).cp;
        let mut moved = c.clone();
        for i in 0..c.robots() {
            for x in moved.point_mut(i) {
                if step > 0.0 {
                    *x += rng.gen_range(-step..=step);
                }
            }
        }
        if validate_configuration(spec, &moved)?.is_err() {
            continue;
        }
        if stratum(&fine, &moved).cp < base_cp {
            violations += 1;
        }
    }
    Ok(violations)
}

fn clearance(spec: &ProblemSpec, c: &Configuration) -> f64 {
    let (rr, ro) = clearances(spec, c);
    rr.map_or(ro, |rr| rr.min(ro))
}

/// Smallest clearance seen along desingularization, flattening and the ladder
/// path for random configurations, each sampled at `t_samples` times.
pub fn deformation_safety_probe(
    spec: &ProblemSpec,
    trials: usize,
    t_samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = t_samples.max(2);
    let times: Vec<f64> = (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect();
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let mut axis = Vec::with_capacity(2);
        for _ in 0..2 {
            let target = rng.gen_range(spec.r()..=spec.points());
            let c = random_configuration_with(spec, &mut rng, Some(target))?;
            let info = stratum(spec, &c);
            for &t in &times {
                worst = worst.min(clearance(spec, &desingularize(spec, &c, &info, t)));
            }
            let generic = desingularize(spec, &c, &info, 1.0);
            for &t in &times {
                worst = worst.min(clearance(spec, &phi(spec, &generic, t)?));
            }
            let flat = phi(spec, &generic, 1.0)?;
            ensure_valid(spec, &flat)?;
            axis.push(flat);
        }
        for &t in &times {
            worst = worst.min(clearance(spec, &gamma(spec, &axis[0], &axis[1], t)?));
        }
    }
    Ok(worst)
}

/// Region indices realized by planned, validated requests.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionCensus {
    /// `n k + 1`.
    pub expected: usize,
    /// Region index -> strata tuple of the request that realized it.
    pub exhibits: BTreeMap<usize, Vec<usize>>,
}

impl RegionCensus {
    pub fn distinct(&self) -> usize {
        self.exhibits.len()
    }

    pub fn complete(&self) -> bool {
        self.distinct() == self.expected
    }
}

/// Tries to exhibit one validated request per region index, `trials` attempts each.
pub fn region_census(
    spec: &ProblemSpec,
    seed: u64,
    trials: usize,
    samples: usize,
) -> Result<RegionCensus> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = spec.region_bounds();
    let mut exhibits = BTreeMap::new();
    for region in lo..=hi {
        for _ in 0..trials.max(1) {
            let strata = random_strata(spec, region, &mut rng)?;
            let waypoints = random_waypoints(spec, &strata, &mut rng)?;
            let report = plan_with_samples(&PlanRequest::new(spec.clone(), waypoints), samples)?;
            if report.validation.pass && report.strata == strata {
                exhibits.insert(report.region, report.strata);
                break;
            }
        }
    }
    Ok(RegionCensus {
        expected: spec.n() * spec.k() + 1,
        exhibits,
    })
}
