use std::collections::HashSet;

use excedance::harness::{registry, reproduce_examples, verify, Status, VerifyConfig};

#[test]
fn ids_are_unique_kebab_case() {
    let cases = registry();
    let ids: HashSet<&str> = cases.iter().map(|c| c.id).collect();
    assert_eq!(ids.len(), cases.len());
    for id in ids {
        assert!(id.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-'), "{id}");
    }
}

#[test]
fn whole_registry_passes_at_small_sizes() {
    let report = verify(&VerifyConfig { max_n: Some(4), ..Default::default() }).unwrap();
    let failing: Vec<_> = report.cases.iter().filter(|c| c.status == Status::Fail).collect();
    assert!(failing.is_empty(), "{failing:#?}");
    assert!(report.passed);
}

#[test]
fn report_schema() {
    let report =
        verify(&VerifyConfig { ids: vec!["eulerian-gamma-peaks".into()], max_n: Some(5), timings: true }).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    for key in ["version", "config", "cases", "passed"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let case = &v["cases"][0];
    assert_eq!(case["id"], "eulerian-gamma-peaks");
    assert_eq!(case["status"], "pass");
    assert_eq!(case["n"], 5);
    assert!(case["runtime_ms"].is_u64());
    assert!(case.get("witness").is_none());
}

#[test]
fn examples_report_lists_every_example() {
    let report = reproduce_examples();
    assert!(report.passed);
    assert!(report.cases.iter().all(|c| c.id.starts_with("example-")));
    assert_eq!(report.cases.len(), 7);
}
