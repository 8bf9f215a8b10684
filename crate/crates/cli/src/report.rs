use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use seqplan::{Configuration, PlanReport, ProblemSpec, ValidationStats};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sample {
    pub tau: f64,
    pub robots: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonReport<'a> {
    pub spec: &'a ProblemSpec,
    pub strata: &'a [usize],
    pub region: usize,
    pub region_bounds: (usize, usize),
    pub region_count: usize,
    pub breakpoints: Vec<f64>,
    pub trajectory: Vec<Sample>,
    pub validation: &'a ValidationStats,
}

pub fn samples(trajectory: &[(f64, Configuration)]) -> Vec<Sample> {
    trajectory
        .iter()
        .map(|(tau, c)| Sample {
            tau: *tau,
            robots: c.to_points(),
        })
        .collect()
}

pub fn to_json(
    spec: &ProblemSpec,
    report: &PlanReport,
    trajectory: &[(f64, Configuration)],
) -> serde_json::Result<String> {
    let doc = JsonReport {
        spec,
        strata: &report.strata,
        region: report.region,
        region_bounds: spec.region_bounds(),
        region_count: spec.n() * spec.k() + 1,
        breakpoints: report.path.breakpoints(),
        trajectory: samples(trajectory),
        validation: &report.validation,
    };
    serde_json::to_string_pretty(&doc)
}

/// One row per sample and robot: `tau,robot,x1,...,xd`, robots numbered from 1.
pub fn to_csv(spec: &ProblemSpec, trajectory: &[(f64, Configuration)]) -> String {
    let mut out = String::from("tau,robot");
    for i in 1..=spec.d() {
        let _ = write!(out, ",x{i}");
    }
    out.push('\n');
    for (tau, c) in trajectory {
        for (i, p) in c.points().enumerate() {
            let _ = write!(out, "{tau},{}", i + 1);
            for x in p {
                let _ = write!(out, ",{x}");
            }
            out.push('\n');
        }
    }
    out
}
