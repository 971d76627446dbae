use std::process::Command;

use hodgekit_cli::{list_suites, run_suite, Params, Status};

fn params(kv: &[(&str, u64)]) -> Params {
    kv.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn hodgekit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hodgekit")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn list_contains_the_required_suites_in_a_fixed_order() {
    let names: Vec<&str> = list_suites().iter().map(|s| s.name).collect();
    for want in ["dold-kan-roundtrip", "drpd-envelope", "theta-epsilon", "different-valuation", "quillen-shift"] {
        assert!(names.contains(&want), "{want}");
    }
    let (code, a, _) = hodgekit(&["list"]);
    let (_, b, _) = hodgekit(&["list"]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let listed: Vec<&str> = a.lines().filter(|l| !l.starts_with(' ')).collect();
    assert_eq!(listed, names);
}

#[test]
fn different_valuation_at_three() {
    let r = run_suite("different-valuation", &params(&[("p", 3), ("r_max", 2)]), 1).unwrap();
    assert_eq!(r.cases.len(), 2);
    assert!(r.cases.iter().all(|c| c.status == Status::Pass), "{r:#?}");
    assert_eq!(r.case("r=2").unwrap().expected, "3/2");
}

#[test]
fn quillen_shift_of_a_line_over_z4() {
    let r = run_suite("quillen-shift", &params(&[("p", 2), ("n", 2), ("rank", 1), ("power", 2)]), 1).unwrap();
    assert!(r.passed(false), "{r:#?}");
    assert_eq!(r.case("H2").unwrap().computed, "Z/4");
    assert_eq!(r.case("H1").unwrap().computed, "0");
}

#[test]
fn dold_kan_with_seed_one() {
    let r = run_suite("dold-kan-roundtrip", &params(&[("p", 2), ("n", 2), ("max_degree", 5), ("cases", 20)]), 1).unwrap();
    assert_eq!(r.cases.len(), 20);
    assert!(r.passed(false), "{r:#?}");
}

#[test]
fn cases_are_sorted_by_name() {
    let r = run_suite("koszul-gamma", &Params::new(), 5).unwrap();
    let names: Vec<&String> = r.cases.iter().map(|c| &c.name).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

/// Everything except the wall-clock field.
fn without_timing(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"elapsed_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn reruns_with_the_same_seed_are_identical() {
    let dir = std::env::temp_dir().join(format!("hodgekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for path in [&a, &b] {
        let (code, _, _) = hodgekit(&["verify", "koszul-gamma", "--seed", "9", "--json", path.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let (ja, jb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(without_timing(&ja), without_timing(&jb));
    let (_, other, _) = hodgekit(&["verify", "koszul-gamma", "--seed", "10", "--json", "-"]);
    assert_ne!(without_timing(&ja), without_timing(&other));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_report_has_the_documented_shape() {
    let (code, out, _) = hodgekit(&["verify", "different-valuation", "--p", "2", "--param", "r_max=2", "--json", "-"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["cases", "elapsed_ms", "params", "seed", "suite", "summary"]);
    assert_eq!(v["params"]["p"], 2);
    assert_eq!(v["summary"], serde_json::json!({"pass": 2, "fail": 0, "truncated": 0}));
    let case = v["cases"][0].as_object().unwrap();
    assert_eq!(case.keys().collect::<Vec<_>>(), ["computed", "expected", "name", "status"]);
    assert_eq!(case["status"], "pass");
}

#[test]
fn exit_codes() {
    assert_eq!(hodgekit(&["verify", "quillen-shift"]).0, 0);
    assert_eq!(hodgekit(&["verify", "no-such-suite"]).0, 2);
    assert_eq!(hodgekit(&["verify", "quillen-shift", "--param", "r_max=2"]).0, 2);
    assert_eq!(hodgekit(&["verify", "quillen-shift", "--p", "4"]).0, 2);
    assert_eq!(hodgekit(&["verify", "quillen-shift", "--bogus"]).0, 2);
    assert_eq!(hodgekit(&["verify", "theta-epsilon", "--param", "k=1"]).0, 2);
    assert_eq!(hodgekit(&["frobnicate"]).0, 2);
}

#[test]
fn truncated_evidence_needs_an_explicit_flag() {
    let (code, out, _) = hodgekit(&["verify", "cotangent-regular", "--param", "depth=3"]);
    assert_eq!(code, 1);
    assert!(out.contains("[truncated-evidence]"), "{out}");
    assert_eq!(hodgekit(&["verify", "cotangent-regular", "--param", "depth=3", "--allow-truncated"]).0, 0);
}
