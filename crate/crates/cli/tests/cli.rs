use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn regnilp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regnilp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("regnilp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_report(args: &[&str], name: &str) -> (i32, Value) {
    let path = tmp(name);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--json", &p, "--no-timing"]);
    let out = regnilp(&all);
    let text = std::fs::read_to_string(&path).expect("report written");
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["cases"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["checks"].as_array().unwrap())
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check named {name}"))
}

#[test]
fn g2_regular_weights() {
    let (code, r) = json_report(&["verify", "regular", "--type", "G2", "--prime", "7"], "g2.json");
    assert_eq!(code, 0);
    assert_eq!(r["suite"], "regular");
    let w = check(&r, "weights of c(X) = {2k_i}");
    assert_eq!(w["actual"], serde_json::json!([2, 10]));
    assert_eq!(w["verdict"], "pass");
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn nonsmooth_center_dims() {
    let (code, r) = json_report(&["verify", "nonsmooth", "--prime", "5"], "ns.json");
    assert_eq!(code, 0);
    let first = &r["cases"][0];
    assert_eq!(first["parameters"]["p"], 5);
    assert_eq!(first["checks"][0]["actual"], 1);
    assert_eq!(first["checks"][1]["actual"], 0);
    assert_eq!(first["checks"][2]["actual"], false);
}

#[test]
fn summary_matches_tallies() {
    let (_, r) = json_report(&["verify", "flags"], "flags.json");
    let mut counts = [0u64; 3];
    for c in r["cases"].as_array().unwrap() {
        for k in c["checks"].as_array().unwrap() {
            let i = ["pass", "fail", "skip"]
                .iter()
                .position(|v| k["verdict"] == *v)
                .unwrap();
            counts[i] += 1;
        }
    }
    assert_eq!(r["summary"]["pass"], counts[0]);
    assert_eq!(r["summary"]["fail"], counts[1]);
    assert_eq!(r["summary"]["skip"], counts[2]);
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "springer", "--n", "3", "--prime", "7", "--seed", "3"];
    let (_, a) = json_report(&args, "s1.json");
    let (_, b) = json_report(&args, "s2.json");
    assert_eq!(a, b);
    let one = std::fs::read(tmp("s1.json")).unwrap();
    let two = std::fs::read(tmp("s2.json")).unwrap();
    assert_eq!(one, two);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(regnilp(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(regnilp(&["verify", "regular", "--type", "G3"]).status.code(), Some(2));
    assert_eq!(regnilp(&["verify", "regular", "--prime", "4"]).status.code(), Some(2));
    assert_eq!(regnilp(&["verify", "regular", "--rank", "x"]).status.code(), Some(2));
    assert_eq!(regnilp(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn skips_only_fail_under_strict() {
    // A4 at p = 5 is good but not very good: advisory run
    let args = ["verify", "regular", "--type", "A4", "--prime", "5"];
    let out = regnilp(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("skip"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(regnilp(&strict).status.code(), Some(1));
}

#[test]
fn flag_budget_is_a_skip() {
    let (code, r) = json_report(&["verify", "flags", "--n", "8", "--prime", "3"], "budget.json");
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["skip"], 1);
    assert_eq!(r["summary"]["pass"], 0);
}

#[test]
fn explicit_coefficients() {
    let (code, r) = json_report(
        &["verify", "springer", "--n", "4", "--prime", "7", "--coeffs", "3,1,2"],
        "coeffs.json",
    );
    assert_eq!(code, 0);
    assert_eq!(check(&r, "samples with dgamma0 = a_1 I")["actual"], 1);
    assert_eq!(regnilp(&["verify", "springer", "--prime", "7", "--coeffs", "14"]).status.code(), Some(2));
}
