use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use seqplan::planner::build_path;
use seqplan::{Configuration, ProblemSpec};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_seqplan"))
}

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("failed to run seqplan")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn write_problem(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn two_robots() -> String {
    problems()
        .join("two_robots.json")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn plan_json_report() {
    let out = run(&["plan", &two_robots(), "--samples", "50"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let region = doc["region"].as_u64().unwrap();
    assert!((4..=8).contains(&region));
    assert_eq!(region, 6);
    assert_eq!(doc["strata"], serde_json::json!([3, 3]));
    assert_eq!(doc["validation"]["pass"], serde_json::json!(true));
    assert!(doc["breakpoints"].as_array().unwrap().len() >= 4);
}

#[test]
fn plan_csv_header_and_rows() {
    let out = run(&["plan", &two_robots(), "--samples", "5", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tau,robot,x1,x2"));
    assert_eq!(lines.next(), Some("0,1,0.5,2"));
    assert_eq!(lines.next(), Some("0,2,0.5,-1"));
    assert_eq!(text.lines().last(), Some("1,2,0.5,1"));
}

#[test]
fn plan_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = run(&["plan", &two_robots(), "-o", target.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(doc["region_count"], serde_json::json!(5));
}

#[test]
fn exported_trajectory_round_trips() {
    let path = problems().join("three_waypoints.json");
    let out = run(&["plan", path.to_str().unwrap(), "--samples", "97"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();

    let problem: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let spec = ProblemSpec::new(2, 2, 2, 3).unwrap();
    let waypoints: Vec<Configuration> = problem["waypoints"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| {
            let pts: Vec<Vec<f64>> = serde_json::from_value(w.clone()).unwrap();
            Configuration::from_points(&pts).unwrap()
        })
        .collect();
    let planned = build_path(&spec, &waypoints).unwrap();

    let samples = doc["trajectory"].as_array().unwrap();
    assert!(samples.len() >= 97);
    for s in samples {
        let tau = s["tau"].as_f64().unwrap();
        let robots: Vec<Vec<f64>> = serde_json::from_value(s["robots"].clone()).unwrap();
        let exported = Configuration::from_points(&robots).unwrap();
        let here = planned.eval(tau).unwrap();
        assert!(exported.max_abs_diff(&here) <= 1e-12, "tau = {tau}");
    }
    for b in doc["breakpoints"].as_array().unwrap() {
        let b = b.as_f64().unwrap();
        assert!(samples.iter().any(|s| s["tau"].as_f64().unwrap() == b));
    }
}

#[test]
fn exit_codes_by_input_class() {
    let dir = tempfile::tempdir().unwrap();
    let one_obstacle = write_problem(
        &dir,
        "r1.json",
        r#"{"d":2,"k":2,"r":1,"n":2,"waypoints":[[[0.5,2.0],[0.5,-1.0]],[[0.5,-2.0],[0.5,1.0]]]}"#,
    );
    let coincident = write_problem(
        &dir,
        "clash.json",
        r#"{"d":2,"k":2,"r":2,"n":2,"waypoints":[[[2.0,2.0],[2.0,2.0]],[[0.5,-2.0],[0.5,1.0]]]}"#,
    );
    let on_obstacle = write_problem(
        &dir,
        "hit.json",
        r#"{"d":2,"k":2,"r":2,"n":2,"waypoints":[[[0.0,0.0],[5.0,5.0]],[[0.5,-2.0],[0.5,1.0]]]}"#,
    );
    let garbage = write_problem(&dir, "bad.json", "{ not json");
    let short = write_problem(
        &dir,
        "short.json",
        r#"{"d":2,"k":2,"r":2,"n":3,"waypoints":[[[0.5,2.0],[0.5,-1.0]],[[0.5,-2.0],[0.5,1.0]]]}"#,
    );

    for _ in 0..2 {
        assert_eq!(code(&run(&["plan", &one_obstacle])), 3);
        assert_eq!(code(&run(&["plan", &coincident])), 2);
        assert_eq!(code(&run(&["plan", &on_obstacle])), 2);
        assert_eq!(code(&run(&["plan", &garbage])), 1);
        assert_eq!(code(&run(&["plan", &short])), 1);
        assert_eq!(code(&run(&["plan", "/nonexistent/problem.json"])), 1);
        assert_eq!(code(&run(&["plan", &two_robots(), "--format", "xml"])), 1);
    }
    let out = run(&["plan", &one_obstacle]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported regime"));
}

#[test]
fn svg_elements() {
    let out = run(&["svg", &two_robots()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches(r#"class="trajectory""#).count(), 2);
    assert_eq!(text.matches(r#"class="obstacle""#).count(), 2);
    assert_eq!(text.matches(r#"class="waypoint""#).count(), 4);

    let again = run(&["svg", &two_robots()]);
    assert_eq!(again.stdout, text.as_bytes());
}

#[test]
fn svg_equal_endpoints_still_draws_motion() {
    let dir = tempfile::tempdir().unwrap();
    let same = write_problem(
        &dir,
        "same.json",
        r#"{"d":2,"k":2,"r":2,"n":2,"waypoints":[[[0.25,1.0],[0.75,1.0]],[[0.25,1.0],[0.75,1.0]]]}"#,
    );
    let out = run(&["svg", &same, "--samples", "30"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().filter(|l| l.contains(r#"class="trajectory""#)) {
        let pts = line.split("points=\"").nth(1).unwrap();
        let distinct: std::collections::BTreeSet<&str> =
            pts.trim_end_matches("\"/>").split(' ').collect();
        assert!(distinct.len() > 2, "{line}");
    }
}

#[test]
fn svg_needs_axes_in_space() {
    let space = problems().join("space.json");
    let space = space.to_str().unwrap();
    assert_eq!(code(&run(&["svg", space])), 5);
    let out = run(&["svg", space, "--axes", "1,3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout)
            .unwrap()
            .matches(r#"class="trajectory""#)
            .count(),
        3
    );
    assert_eq!(code(&run(&["svg", space, "--axes", "1,4"])), 1);

    let dir = tempfile::tempdir().unwrap();
    let garbage = write_problem(&dir, "bad.json", "[]");
    assert_eq!(code(&run(&["svg", &garbage])), 1);
}

fn region_count(out: &Output) -> usize {
    let text = String::from_utf8_lossy(&out.stdout);
    text.lines().filter(|l| l.starts_with("region ")).count()
}

#[test]
fn regions_match_nk_plus_one() {
    let out = run(&["regions", "--k", "2", "--n", "2", "--r", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(region_count(&out), 5);
    let text = String::from_utf8_lossy(&out.stdout);
    for l in 4..=8 {
        assert!(text.contains(&format!("region {l}:")));
    }

    let out = run(&["regions", "--k", "3", "--n", "3", "--r", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(region_count(&out), 10);

    let out = run(&["regions", "--k", "1", "--n", "2", "--r", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(region_count(&out), 3);

    assert_eq!(code(&run(&["regions", "--r", "1"])), 3);
    assert_eq!(code(&run(&["regions", "--r", "0"])), 3);
}

#[test]
fn probes() {
    let out = run(&[
        "probe",
        "continuity",
        "--strata",
        "3,4",
        "--trials",
        "10",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["probe", "semicontinuity", "--trials", "500", "--k", "3"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("violations: 0"));
    let out = run(&["probe", "safety", "--trials", "10", "--t-samples", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&run(&["probe", "continuity", "--strata", "3"])), 1);
    assert_eq!(code(&run(&["probe", "safety", "--r", "1"])), 3);
}
