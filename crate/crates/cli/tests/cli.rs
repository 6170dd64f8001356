use klr_specht::combinatorics::{detect_cp_pair, multipartitions, Multicharge, QuantumChar};
use serde_json::Value;
use std::collections::BTreeSet;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specht-cp"))
        .args(args)
        .env_remove("SPECHT_CP_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn worked_examples_exit_cleanly() {
    for which in ["4.4", "5.2", "6.2"] {
        let out = run(&["example", which]);
        assert_eq!(out.status.code(), Some(0), "example {which}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["example"], which);
    }
    let out = run(&["example", "6.2"]);
    let v = json(&out);
    assert_eq!(v["verification"], true);
    assert_eq!(v["pair"]["degree"], 6);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["cp", "--lambda", "(2,1)"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["cp", "--lambda", "(2,1", "--mu", "(3)", "--e", "3"]).status.code(), Some(2));
    assert_eq!(run(&["example", "9.9"]).status.code(), Some(2));
}

#[test]
fn non_pairs_exit_one() {
    let out = run(&["cp", "--lambda", "(2,1)", "--mu", "(1,1,1)", "--e", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["cpPair"], false);
}

#[test]
fn certificate_round_trips() {
    let out = run(&["cp", "--lambda", "(;3,2,2;4,3)", "--mu", "(3;3,2,2;4)", "--e", "4", "--kappa", "0,2,1", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cert: klr_specht::hom::HomCertificate =
        serde_json::from_value(v["certificate"].clone()).expect("certificate deserialises");
    assert!(cert.verified);
    assert_eq!(serde_json::to_value(&cert).unwrap(), v["certificate"]);
    let mut fresh = cert.clone();
    fresh.verified = false;
    assert!(fresh.verify().unwrap());
}

#[test]
fn output_is_deterministic() {
    let args = ["hom", "--lambda", "(3,2)", "--mu", "(5)", "--degree", "0", "--e", "2", "--ring", "F2"];
    let a = run(&args);
    let b = run(&[&["--jobs", "3"][..], &args[..]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["dimension"], 1);
}

#[test]
fn cp_pairs_match_a_brute_force_scan() {
    for (n, e, kappa) in [(5, "3", "0"), (4, "2", "0,1"), (4, "inf", "0,0"), (3, "3", "0,1,2")] {
        let out = run(&["cp-pairs", "--n", &n.to_string(), "--e", e, "--kappa", kappa]);
        assert_eq!(out.status.code(), Some(0));
        let listed: BTreeSet<(String, String)> = json(&out)["pairs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| (p["lambda"].to_string(), p["mu"].to_string()))
            .collect();
        let (q, k) = (QuantumChar::parse(e).unwrap(), Multicharge::parse(kappa).unwrap());
        let all = multipartitions(n, k.level());
        let mut scanned = BTreeSet::new();
        for l in &all {
            for m in &all {
                if detect_cp_pair(l, m, q, &k).is_ok() {
                    scanned.insert((serde_json::to_string(l).unwrap(), serde_json::to_string(m).unwrap()));
                }
            }
        }
        assert_eq!(listed, scanned, "n={n} e={e} kappa={kappa}");
    }
}

#[test]
fn dual_strategy_check_passes() {
    let out = run(&["--seed", "7", "check", "--lambda", "(3,1;1)", "--e", "3", "--kappa", "0,1", "--samples", "150"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["disagreements"].as_array().unwrap().len(), 0);
}
