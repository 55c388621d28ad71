use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsspic")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn picard_of_the_one_curve_cylinder() {
    let out = run(&["picard", &fixture("cyl1.json"), "--pretty"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["display"], "(T_{44/7}) ⋊ Z2");
    assert_eq!(v["outer"]["order"], 2);
    assert_eq!(v["torus_factors"].as_object().unwrap().len(), 1);
}

#[test]
fn statpic_values() {
    let out = run(&["statpic", &fixture("cyl2.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["pretty"], "Z");
    let out = run(&["statpic", &fixture("torus-2k-parallel.json")]);
    assert_eq!(json(&out)["atoms"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["picard".to_string(), fixture("genus2-separating.json")],
        vec!["invariants".to_string(), fixture("torus-2k-parallel.json")],
        vec!["verify-groupoid".to_string(), "cylinder-one".into(), "--samples".into(), "200".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn morita_and_isomorphism_answers_exit_zero() {
    let a = fixture("cyl1.json");
    let out = run(&["morita", &a, &a]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"], true);
    let out = run(&["morita", &a, &fixture("cyl2.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"], false);
    assert!(json(&out)["witness"].is_null());
}

#[test]
fn element_arithmetic() {
    let s = fixture("cyl2.json");
    let a = r#"{"angles":{"T1":"1/7"},"twists":{"L":{"T1":2}}}"#;
    let out = run(&["invert", &s, a]);
    assert_eq!(code(&out), 0);
    let inv = json(&out).to_string();
    let out = run(&["compose", &s, a, &inv]);
    let prod = json(&out).to_string();
    let out = run(&["equal", &s, &prod, "{}"]);
    assert_eq!(json(&out)["result"], true);
    let out = run(&["equal", &s, a, "{}"]);
    assert_eq!(json(&out)["result"], false);
}

#[test]
fn verify_groupoid_exit_codes() {
    let out = run(&["verify-groupoid", "affine", "--samples", "200"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["conventions"]["sigma"], -1);

    let out = run(&["verify-groupoid", "affine", "--samples", "200", "--perturb", "wrong-flow-factor"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["pass"], false);

    let out = run(&["verify-groupoid", "cylinder-one", "--check", "lift", "--lift", "hq"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn symplectic_reports() {
    let out = run(&["report-symplectic", "--genus", "0", "--boundary", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["pic"]["value"]["pretty"], "Z2");
    let out = run(&["report-symplectic", "--genus", "3"]);
    assert_eq!(json(&out)["pic"]["value"], "Mod(S_3)");
}

#[test]
fn invalid_surface_is_a_domain_error() {
    let bad = r#"{"closed":true,"leaves":[{"id":"A","genus":0,"sign":"+","volume":"1","free_boundary":0}],"curves":[]}"#;
    let out = run(&["validate", bad]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["valid"], false);
    let out = run(&["picard", bad]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["error"]["kind"], "invalid_surface");
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let out = run(&["picard", "{not json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"]["kind"], "parse");
    let out = run(&["picard", "/nonexistent/surface.json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"]["kind"], "io");
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"]["kind"], "usage");
    let out = run(&["compose", &fixture("cyl1.json"), r#"{"bogus":1}"#, "{}"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn help_is_json() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["help"].as_str().unwrap().contains("verify-groupoid"));
}
