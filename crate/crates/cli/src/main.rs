//! `seqplan` command-line front end.
//!
//! Exit codes: 0 success, 1 parse error, 2 invalid waypoints, 3 unsupported
//! regime (r < 2), 4 validation or probe failure, 5 SVG of a d > 2 problem
//! without `--axes`.

mod problem;
mod report;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use seqplan::harness::{
    continuity_probe, deformation_safety_probe, region_census, semicontinuity_probe,
};
use seqplan::planner::{plan_with_samples, sample_path, DEFAULT_VALIDATION_SAMPLES};
use seqplan::ProblemSpec;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid waypoints: {0}")]
    Invalid(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Projection(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Failed(_) => 4,
            CliError::Projection(_) => 5,
        }
    }
}

impl From<seqplan::Error> for CliError {
    fn from(e: seqplan::Error) -> Self {
        use seqplan::Error as E;
        match e {
            E::UnsupportedRegime { .. } => CliError::Unsupported(e.to_string()),
            E::InvalidWaypoint { .. } | E::InvalidConfiguration(_) => {
                CliError::Invalid(e.to_string())
            }
            E::InvalidProblem(_)
            | E::DimensionMismatch { .. }
            | E::RobotCount { .. }
            | E::WaypointCount { .. }
            | E::TargetCp { .. }
            | E::StrataMismatch(_) => CliError::Parse(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "seqplan",
    version,
    about = "Sequential collision-free motion planner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan through the waypoints of a problem file and write a report
    Plan(PlanArgs),
    /// Render the planned trajectories as SVG
    Svg(SvgArgs),
    /// Exhibit one validated request per region index
    Regions(RegionArgs),
    /// Run one of the randomized checks
    Probe {
        #[command(subcommand)]
        probe: Probe,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct PlanArgs {
    input: PathBuf,
    /// Uniform trajectory samples written to the report (breakpoints are added)
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Uniform samples used for collision validation
    #[arg(long, default_value_t = DEFAULT_VALIDATION_SAMPLES)]
    validation_samples: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SvgArgs {
    input: PathBuf,
    #[arg(long, default_value_t = 600)]
    samples: usize,
    #[arg(long, default_value_t = 800.0)]
    width: f64,
    #[arg(long, default_value_t = 600.0)]
    height: f64,
    /// Two 1-based coordinates to draw, e.g. `1,2`; required when d > 2
    #[arg(long, value_delimiter = ',')]
    axes: Option<Vec<usize>>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ProblemArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ProblemArgs {
    fn spec(&self) -> Result<ProblemSpec, CliError> {
        Ok(ProblemSpec::new(self.d, self.k, self.r, self.n)?)
    }
}

#[derive(Args)]
struct RegionArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Attempts per region index
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 2000)]
    validation_samples: usize,
}

#[derive(Subcommand)]
enum Probe {
    /// Max path distance between delta-close requests in one strata tuple
    Continuity {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Comma-separated strata tuple, one entry per waypoint
        #[arg(long, value_delimiter = ',', required = true)]
        strata: Vec<usize>,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1e-3)]
        bound: f64,
    },
    /// Count stratum drops under perturbations below the projection tolerance
    Semicontinuity {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Minimum clearance along the deformations and the ladder path
    Safety {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 200)]
        t_samples: usize,
    },
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Failed(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_plan(args: &PlanArgs) -> Result<(), CliError> {
    let request = problem::load(&args.input)?;
    let report = plan_with_samples(&request, args.validation_samples)?;
    let trajectory = sample_path(&report.path, args.samples)?;
    let text = match args.format {
        Format::Json => report::to_json(&request.spec, &report, &trajectory)
            .map_err(|e| CliError::Failed(e.to_string()))?,
        Format::Csv => report::to_csv(&request.spec, &trajectory),
    };
    write_output(args.output.as_deref(), &text)?;
    if report.validation.pass {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "validation failed: {:?}",
            report.validation
        )))
    }
}

fn cmd_svg(args: &SvgArgs) -> Result<(), CliError> {
    let request = problem::load(&args.input)?;
    let d = request.spec.d();
    let axes = match &args.axes {
        Some(a) => {
            if a.len() != 2 || a.iter().any(|&i| i == 0 || i > d) || a[0] == a[1] {
                return Err(CliError::Parse(format!(
                    "--axes needs two distinct coordinates in 1..={d}"
                )));
            }
            (a[0] - 1, a[1] - 1)
        }
        None if d > 2 => {
            return Err(CliError::Projection(format!(
                "problem has d = {d}; choose two coordinates with --axes"
            )))
        }
        None => (0, 1),
    };
    let report = plan_with_samples(&request, DEFAULT_VALIDATION_SAMPLES)?;
    let trajectory = sample_path(&report.path, args.samples)?;
    let canvas = svg::Canvas {
        width: args.width,
        height: args.height,
        axes,
    };
    let text = svg::render(&request.spec, &canvas, &trajectory, &request.waypoints);
    write_output(args.output.as_deref(), &text)
}

fn cmd_regions(args: &RegionArgs) -> Result<(), CliError> {
    let spec = args.problem.spec()?;
    let census = region_census(
        &spec,
        args.problem.seed,
        args.trials,
        args.validation_samples,
    )?;
    for (region, strata) in &census.exhibits {
        println!("region {region}: strata {strata:?}");
    }
    let (lo, hi) = spec.region_bounds();
    println!(
        "count: {} (expected n k + 1 = {}, range [{lo}, {hi}])",
        census.distinct(),
        census.expected
    );
    if census.complete() {
        Ok(())
    } else {
        Err(CliError::Failed(
            "not every region index was realized".into(),
        ))
    }
}

fn cmd_probe(probe: &Probe) -> Result<(), CliError> {
    match probe {
        Probe::Continuity {
            problem,
            strata,
            delta,
            trials,
            bound,
        } => {
            let spec = problem.spec()?;
            let sup = continuity_probe(&spec, strata, *delta, *trials, problem.seed)?;
            println!("max sup-distance: {sup:e} (bound {bound:e})");
            if sup <= *bound {
                Ok(())
            } else {
                Err(CliError::Failed("continuity bound exceeded".into()))
            }
        }
        Probe::Semicontinuity { problem, trials } => {
            let spec = problem.spec()?;
            let violations = semicontinuity_probe(&spec, *trials, problem.seed)?;
            println!("violations: {violations} of {trials} trials");
            if violations == 0 {
                Ok(())
            } else {
                Err(CliError::Failed(
                    "stratum count dropped under perturbation".into(),
                ))
            }
        }
        Probe::Safety {
            problem,
            trials,
            t_samples,
        } => {
            let spec = problem.spec()?;
            let clearance = deformation_safety_probe(&spec, *trials, *t_samples, problem.seed)?;
            println!("min clearance: {clearance:e}");
            if clearance > 0.0 {
                Ok(())
            } else {
                Err(CliError::Failed("zero clearance observed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Plan(args) => cmd_plan(args),
        Command::Svg(args) => cmd_svg(args),
        Command::Regions(args) => cmd_regions(args),
        Command::Probe { probe } => cmd_probe(probe),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("seqplan: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
