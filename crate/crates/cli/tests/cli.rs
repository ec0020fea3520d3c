use std::process::{Command, Output};

use serde_json::Value;

fn sqpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqpow")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn invariants_of_a_path() {
    let o = sqpow(&["invariants", "path:n=9,t=3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["nu"].as_u64(), v["nu0"].as_u64(), v["nu1"].as_u64()), (Some(3), Some(2), Some(2)));
}

#[test]
fn regularity_of_a_cube_power() {
    let o = sqpow(&["reg", "path:n=14,t=3", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "11");
    let o = sqpow(&["--json", "reg", "path:n=14,t=3", "--k", "3", "--field", "q"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reg_quotient"], 10);
}

#[test]
fn failing_check_exits_one() {
    let spec = format!("tree:@{},t=3", data("binary_tree.json"));
    let o = sqpow(&["check", "linres", &spec, "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "false");
    let o = sqpow(&["check", "linquot", &spec, "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn passing_checks() {
    for (prop, input) in [("forest", "path:n=7,t=3"), ("linquot", "path:n=7,t=2"), ("linrel", "path:n=7,t=2")] {
        let o = sqpow(&["check", prop, input, "--k", "3"]);
        assert_eq!(o.status.code(), Some(0), "{prop}");
        assert_eq!(stdout(&o).trim(), "true");
    }
}

#[test]
fn inline_ideal_and_sqpower() {
    let o = sqpow(&["--json", "sqpower", r#"{"facets": [[1,2],[2,3],[3,4],[4,5]]}"#, "--k", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 3);
    let o = sqpow(&["betti", r#"{"generators": [[1,2],[3,4]]}"#]);
    assert_eq!(stdout(&o), "       0 1\ntotal: 2 1\n    2: 2 .\n    3: . 1\n");
    // The path on four vertices has a linear resolution.
    let o = sqpow(&["check", "linres", r#"{"generators": [[1,2],[2,3],[3,4]]}"#]);
    assert_eq!(o.status.code(), Some(0));
    let o = sqpow(&["--json", "betti", r#"{"generators": [[1,2],[2,3],[3,4]]}"#, "--degree", "4"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["j"] == 4));
}

#[test]
fn usage_and_budget_errors() {
    assert_eq!(sqpow(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(sqpow(&["betti", "path:n=5,t=2", "--field", "gf4"]).status.code(), Some(2));
    assert_eq!(sqpow(&["reg"]).status.code(), Some(2));
    assert_eq!(sqpow(&["invariants", "/no/such/file.json"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_sqpow"))
        .args(["invariants", "path:n=20,t=2"])
        .env("SFP_NODE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suite_json() {
    let o = sqpow(&["--json", "verify", "examples"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["suite"], "examples");
    assert_eq!(v[0]["passed"], true);
}

#[test]
fn probe_is_informational() {
    let o = sqpow(&["--json", "probe-conjecture", "--trials", "8", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lower_violations"], 0);
}
