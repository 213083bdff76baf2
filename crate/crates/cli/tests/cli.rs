use std::process::{Command, Output};

fn excedance(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_excedance")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_writes_a_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = excedance(&[
        "verify",
        "--ids",
        "example-psi,des-exc-equidistribution",
        "--max-n",
        "6",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS des-exc-equidistribution n<=6"));

    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    let cases = report["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 2);
    assert_eq!(cases[1]["n"], 6);
    assert!(cases.iter().all(|c| c["runtime_ms"].is_null() && c["status"] == "pass"));
}

#[test]
fn over_cap_is_skipped_not_failed() {
    let o = excedance(&["verify", "--ids", "nest-cros-cpk-star", "--max-n", "40"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("SKIP nest-cros-cpk-star"));
}

#[test]
fn unknown_case_is_an_error() {
    let o = excedance(&["verify", "--ids", "no-such-case"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-case"));
}

#[test]
fn eulerian_table() {
    let o = excedance(&["table", "--class", "S", "--stats", "des", "--n", "3"]);
    assert_eq!(stdout(&o), "n,des,count\n3,0,1\n3,1,4\n3,2,1\n");
}

#[test]
fn table_accepts_pattern_stats_and_ranges() {
    let o = excedance(&["table", "--class", "S(231)", "--stats", "des,31-2", "--n", "1..3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stats"], serde_json::json!(["des", "31-2"]));
    let total: u64 = v["rows"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 1 + 2 + 5);
}

#[test]
fn map_reproduces_worked_examples() {
    let o = excedance(&["map", "--bijection", "psi", "--input", "4 1 2 7 9 6 5 8 3"]);
    assert_eq!(stdout(&o), "351496827\n");
    let o = excedance(&["map", "--bijection", "psi_fv", "--input", "412796583"]);
    assert_eq!(stdout(&o), "UBRDURBD;0,0,0,1,0,1,1,0\n");
    let o = excedance(&["map", "--bijection", "phi", "--input", "3 1 2"]);
    assert!(o.status.success());
    assert!(!excedance(&["map", "--bijection", "phi", "--input", "1 1 2"]).status.success());
}

#[test]
fn cf_expansion_and_kind_check() {
    let o = excedance(&["cf", "--kind", "S", "--spec", "eulerian-s", "--order", "3"]);
    assert_eq!(stdout(&o), "z^0: 1\nz^1: 1\nz^2: 1+t\nz^3: 1+4*t+t^2\n");
    let o = excedance(&["cf", "--kind", "J", "--spec", "eulerian-s", "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gamma_coefficients() {
    let o = excedance(&["gamma", "--poly", "1+26*t+66*t^2+26*t^3+t^4", "--m", "4"]);
    assert_eq!(stdout(&o), "1 22 16\n");
    assert!(!excedance(&["gamma", "--poly", "1+2*t", "--m", "2"]).status.success());
}
