use std::process::{Command, Output};

use serde_json::Value;

const PROBLEMS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/problems");

fn problem(name: &str) -> String {
    format!("{PROBLEMS}/{name}.toml")
}

fn cqlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn status_of<'a>(report: &'a Value, condition: &str) -> &'a str {
    report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["condition"] == condition)
        .unwrap_or_else(|| panic!("{condition} missing"))["status"]
        .as_str()
        .unwrap()
}

#[test]
fn analyze_wedge_json() {
    let r = json(&cqlab(&["analyze", &problem("example31"), "--format", "json"]));
    assert_eq!(r["schema"], "cqlab-report/1");
    assert_eq!(status_of(&r, "GMFCQ"), "FAILS");
    assert_eq!(status_of(&r, "QN"), "FAILS");
    assert_eq!(status_of(&r, "FOSCMS"), "HOLDS");
    assert_eq!(status_of(&r, "MSCQ"), "HOLDS");
    assert_eq!(r["probe"]["verdict"], "BOUNDED");
    assert!(r["mscq_chain"].as_str().unwrap().ends_with("⇒ MSCQ"));
    assert!(r.get("seconds").is_none());
}

#[test]
fn reports_match_the_schema() {
    let schema: Value = serde_json::from_str(cqlab_schema()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    for name in ["example31", "example32", "example33", "example34", "example36", "mpcc_demo", "mpvc_demo", "mpsc_demo"] {
        let r = json(&cqlab(&["analyze", &problem(name), "--format", "json", "--timing"]));
        let errors: Vec<String> = validator.iter_errors(&r).map(|e| format!("{} at {}", e, e.instance_path)).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
    }
}

fn cqlab_schema() -> &'static str {
    include_str!("../../core/schema/report.schema.json")
}

#[test]
fn text_and_json_agree() {
    for name in ["example31", "example33", "mpcc_demo"] {
        let r = json(&cqlab(&["analyze", &problem(name), "--format", "json"]));
        let text = stdout(&cqlab(&["analyze", &problem(name)]));
        for v in r["verdicts"].as_array().unwrap() {
            let (c, s) = (v["condition"].as_str().unwrap(), v["status"].as_str().unwrap());
            assert!(
                text.lines().any(|l| {
                    let mut w = l.split_whitespace();
                    w.next() == Some(c) && w.next() == Some(s)
                }),
                "{name}: no text line for {c} {s}"
            );
        }
    }
}

#[test]
fn quasi_normality_refused_without_admissibility() {
    let o = cqlab(&["analyze", &problem("example34"), "--checks", "qn", "--delta", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("AssumptionNotGuaranteed"));
}

#[test]
fn vacuous_soscqn() {
    let o = cqlab(&["analyze", &problem("example33"), "--checks", "soscqn,pn"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("SOSCQN") && l.contains("HOLDS") && l.contains("vacuous")), "{text}");
    assert!(text.lines().any(|l| l.starts_with("PN") && l.contains("FAILS") && l.contains("λ = (1, 1)")), "{text}");
}

#[test]
fn stationarity_on_complementarity() {
    let r = json(&cqlab(&["analyze", &problem("mpcc_demo"), "--format", "json"]));
    assert_eq!(r["stationarity"]["status"], "stationary");
    assert!(r["stationarity"]["mpcc"].as_array().unwrap().iter().all(|p| p["pattern_ok"] == true));
}

#[test]
fn cones_of_complementarity_and_wedge() {
    let t = stdout(&cqlab(&["cones", &problem("mpcc_demo")]));
    let n = t.lines().find(|l| l.starts_with("N(y) ")).unwrap();
    for piece in ["lines {(0, 1)}", "lines {(1, 0)}", "rays {(-1, 0), (0, -1)}"] {
        assert!(n.contains(piece), "{n}");
    }
    let w = stdout(&cqlab(&["cones", &problem("example31"), "--direction", "1,1"]));
    assert!(w.contains("N(y; d) = rays {(1, -1)}"), "{w}");
    let w = stdout(&cqlab(&["cones", &problem("example31"), "--direction", "1,0"]));
    assert!(w.contains("N(y; d) = ∅"), "{w}");
    let bad = cqlab(&["cones", &problem("example31"), "--point", "1,0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn table_cells() {
    let o = cqlab(&["table4", "--cells", "0,0,0,0;-1,0,0,0;0,0,0,1"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert!(t.contains("Robinson SC") && t.contains("SOSCMS") && t.contains("probe: "), "{t}");
    assert!(t.contains("3 cells, 0 mismatches"), "{t}");
    assert_eq!(cqlab(&["table4", "--cells", "0,0"]).status.code(), Some(2));
}

#[test]
fn fixtures_list_and_run() {
    let list = stdout(&cqlab(&["fixtures", "list"]));
    assert!(list.lines().any(|l| l.starts_with("ex31 ")));
    assert!(list.lines().any(|l| l.starts_with("ex41_1_0_0_0 ")));
    let o = cqlab(&["fixtures", "run", "ex31", "ex33", "mpcc_demo"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("3 fixtures, 0 failed"));
    assert_eq!(cqlab(&["fixtures", "run", "nope"]).status.code(), Some(2));
}

#[test]
fn identical_seeds_give_identical_reports() {
    for name in ["example31", "example34", "mpsc_demo"] {
        for seed in ["0", "5"] {
            let run = || cqlab(&["analyze", &problem(name), "--format", "json", "--seed", seed]).stdout;
            assert_eq!(run(), run(), "{name} seed {seed}");
        }
    }
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(cqlab(&["analyze", "/nonexistent.toml"]).status.code(), Some(2));
    assert_eq!(cqlab(&["analyze", &problem("example31"), "--checks", "bogus"]).status.code(), Some(2));
}
