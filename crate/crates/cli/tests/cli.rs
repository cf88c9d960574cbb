use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn program(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "programs", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn ngcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ngcl"))
        .args(args)
        .env_remove("NGCL_STATE_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = ngcl(&full);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (v, out.status.code().unwrap())
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn transform_awp_on_choice_lists_every_state() {
    let (v, code) = json(&[
        "transform",
        "--kind",
        "awp",
        "--pred",
        "x=0",
        &program("choice01.ngcl"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["value"], "{(x=0), (x=1), (x=2)}");
    assert_eq!(v["space"], "vars x mod 3");
}

#[test]
fn transform_dwp_true_on_countdown_is_everything() {
    let (v, _) = json(&[
        "transform",
        "--kind",
        "dwp",
        "--pred",
        "true",
        &program("loop_down.ngcl"),
    ]);
    assert_eq!(v["results"][0]["value"], "{(x=0), (x=1), (x=2), (x=3)}");
}

#[test]
fn transform_asp_false_is_empty() {
    let (v, _) = json(&[
        "transform",
        "--kind",
        "asp",
        "--pred",
        "false",
        &program("skip.ngcl"),
    ]);
    assert_eq!(v["results"][0]["value"], "{}");
}

#[test]
fn both_engines_agree() {
    for kind in ["awp", "dwp", "awlp", "dwlp", "asp", "dsp", "aslp", "dslp"] {
        let o = ngcl(&[
            "transform",
            "--kind",
            kind,
            "--engine",
            "both",
            "--pred",
            "x < y",
            &program("race.ngcl"),
        ]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
    }
}

#[test]
fn check_exit_codes() {
    let lisbon = ngcl(&[
        "check",
        "--logic",
        "lisbon",
        "--pre",
        "true",
        "--post",
        "x=0",
        &program("choice01.ngcl"),
    ]);
    assert_eq!(lisbon.status.code(), Some(0));
    assert!(stdout(&lisbon).contains("valid"));

    let total = ngcl(&[
        "check",
        "--logic",
        "total-correctness",
        "--pre",
        "true",
        "--post",
        "x=0",
        &program("choice_diverge.ngcl"),
    ]);
    assert_eq!(total.status.code(), Some(1));
    assert!(stdout(&total).contains("witness: x="));

    let inc = ngcl(&[
        "check",
        "--logic",
        "incorrectness",
        "--pre",
        "true",
        "--post",
        "x=1",
        &program("assign0.ngcl"),
    ]);
    assert_eq!(inc.status.code(), Some(1));
    assert!(stdout(&inc).contains("witness: x=1"));
}

#[test]
fn usage_errors_exit_two() {
    let bad_logic = ngcl(&[
        "check",
        "--logic",
        "nonsense",
        "--pre",
        "true",
        "--post",
        "true",
        &program("skip.ngcl"),
    ]);
    assert_eq!(bad_logic.status.code(), Some(2));
    let missing = ngcl(&["classify", "/nonexistent/file.ngcl"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_guard = ngcl(&[
        "transform",
        "--kind",
        "awp",
        "--pred",
        "z = 1",
        &program("skip.ngcl"),
    ]);
    assert_eq!(bad_guard.status.code(), Some(2));
    let bad_flag = ngcl(&["survey", "--corpus", "nowhere"]);
    assert_eq!(bad_flag.status.code(), Some(2));
}

#[test]
fn state_cap_can_only_be_lowered() {
    let lowered = Command::new(env!("CARGO_BIN_EXE_ngcl"))
        .args([
            "transform",
            "--kind",
            "awp",
            "--pred",
            "true",
            &program("choice01.ngcl"),
        ])
        .env("NGCL_STATE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(lowered.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&lowered.stderr).contains("cap"));

    let raised = Command::new(env!("CARGO_BIN_EXE_ngcl"))
        .args([
            "transform",
            "--kind",
            "awp",
            "--pred",
            "true",
            "--modulus",
            "1100",
            &program("race.ngcl"),
        ])
        .env("NGCL_STATE_CAP", "100000000")
        .output()
        .unwrap();
    assert_eq!(raised.status.code(), Some(2));
}

#[test]
fn classify_reports_flags() {
    let (v, code) = json(&["classify", &program("choice_diverge.ngcl")]);
    assert_eq!(code, 0);
    let results = v["results"].as_array().unwrap();
    let flag = |name: &str| {
        results.iter().find(|r| r["claim"] == name).unwrap()["holds"]
            .as_bool()
            .unwrap()
    };
    assert!(!flag("termination"));
    assert!(!flag("no-branching-divergence"));
    assert!(!flag("determinism"));

    let (v, code) = json(&["classify", &program("skip.ngcl")]);
    assert_eq!(code, 0);
    assert!(v["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["holds"] == true));
}

#[test]
fn survey_ordering_has_no_witness() {
    let (v, code) = json(&["survey", "--suite", "ORDERING"]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["claim"], "ORDERING");
    assert_eq!(r["holds"], true);
    assert!(r.get("witness").is_none());
    assert_eq!(r["corpus"], "small-exhaustive");
    assert_eq!(r["duration_ms"], Value::Null);
}

#[test]
fn survey_bridges_on_random_loops() {
    let (v, code) = json(&[
        "survey",
        "--suite",
        "BRIDGES",
        "--corpus",
        "loops:300",
        "--seed",
        "11",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["results"][0]["stats"]["items"], 300);
}

#[test]
fn failing_theorem_exits_one_with_witness() {
    let (v, code) = json(&[
        "survey",
        "--suite",
        "MAY_TERMINATION",
        "--corpus",
        "exhaustive:2:2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(
        v["results"][0]["witness"]["program"],
        "{ skip } [] { diverge }"
    );
}

#[test]
fn timings_are_opt_in() {
    let (v, _) = json(&[
        "--timings",
        "survey",
        "--suite",
        "ORDERING",
        "--corpus",
        "exhaustive:2:2",
    ]);
    assert!(v["results"][0]["duration_ms"].is_u64());
}

#[test]
fn counterexample_claims() {
    let (v, code) = json(&["counterexample", "--claim", "dwp-neq-intersection"]);
    assert_eq!(code, 0);
    let w = &v["results"][0]["witness"];
    assert!(w["program"].as_str().unwrap().contains("diverge"));
    assert!(w["post"].is_string());
    assert!(w["state"].is_string());

    let (v, code) = json(&["counterexample", "--claim", "galois-pc"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"][0]["stats"]["budget_exhausted"], true);
    let text = ngcl(&["counterexample", "--claim", "galois-pc", "--budget", "50"]);
    assert!(stdout(&text).contains("none within budget"));

    let (v, code) = json(&[
        "counterexample",
        "--claim",
        "appendixC:awpLB-vs-aslpLB-contra",
    ]);
    assert_eq!(code, 0);
    assert!(v["results"][0]["witness"].is_object());
}

#[test]
fn kat_commands() {
    let eq = ngcl(&[
        "kat",
        "--equation",
        "lisbon",
        "--pre",
        "true",
        "--post",
        "x=0",
        &program("choice01.ngcl"),
    ]);
    assert_eq!(eq.status.code(), Some(0));
    let sweep = ngcl(&["kat", "--axioms", "50", "--seed", "5"]);
    assert_eq!(sweep.status.code(), Some(0));
    assert!(stdout(&sweep).contains("0 failures"));
}

#[test]
fn graph_renders_dot() {
    let o = ngcl(&["graph", "--dot", &program("loop_down.ngcl")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn json_reports_round_trip() {
    for args in [
        vec!["--format", "json", "classify", &program("branch.ngcl")],
        vec![
            "--format",
            "json",
            "counterexample",
            "--claim",
            "awlp-neq-union",
        ],
        vec![
            "--format",
            "json",
            "survey",
            "--suite",
            "ORDERING,GALOIS_PC",
            "--corpus",
            "exhaustive:2:2",
        ],
    ] {
        let out = stdout(&ngcl(&args));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", out);
    }
}
