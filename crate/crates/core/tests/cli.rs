//! End-to-end tests of the command-line interface: outputs, exit codes,
//! and JSON round-tripping.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ade-spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn loops_of_a4() {
    let out = run(&["loops", "A(4)", "--max-k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1, 1, 2, 5, 13");
}

#[test]
fn series_e6_factored() {
    let out = run(&["series", "E6", "--kind", "t"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(1-q^6)(1-q^8)/((1-q^3)(1-q^12))"));
}

#[test]
fn measure_of_single_edge() {
    let out = run(&["measure", "A(2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("alpha*d_3"));
}

#[test]
fn measure_weights_render() {
    let out = run(&["measure", "D1ext(4)", "--weights", "--digits", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // (d'_1 + d_2)/2: quarter weights at +-i plus 1/8 on fourth roots.
    assert!(text.contains("exp(i*pi*1/2): 0.375000"), "got: {text}");
}

#[test]
fn e7_measure_is_marked_non_cyclotomic() {
    let out = run(&["measure", "E7"]);
    assert!(stdout(&out).contains("non-cyclotomic"));
    assert!(stdout(&out).contains("(1-q^9)(1-q^12)/((1-q^4)(1-q^18))"));
}

#[test]
fn unknown_graph_is_usage_error() {
    let out = run(&["loops", "B(3)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["series", "A1ext(7)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["loops", "AInf"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_e7_reports_infeasible_with_witness() {
    let out = run(&["decompose", "E7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("infeasible (period 18)"));
    let json_start = text.find('{').expect("json blob");
    let v: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    assert_eq!(v["outcome"], "infeasible");
    assert_eq!(v["period"], 18);
    // The certificate annihilates every basis row but not the target.
    let check = v["check"].as_object().unwrap();
    for (key, value) in check {
        if key == "target" {
            assert_ne!(value.as_str().unwrap(), "0/1");
        } else {
            assert_eq!(value.as_str().unwrap(), "0/1", "row {key}");
        }
    }
}

#[test]
fn decompose_with_period_override() {
    let out = run(&["decompose", "A(5)", "--period", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("feasible (period 12)"));
}

#[test]
fn verify_single_graph_passes() {
    let out = run(&["verify", "E8ext"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn negative_controls_exit_one() {
    for control in ["measure", "theta"] {
        let out = run(&["verify", "A(4)", "--negative-control", control]);
        assert_eq!(out.status.code(), Some(1), "control {control}");
        assert!(stdout(&out).contains("FAIL"));
    }
}

#[test]
fn catalog_lists_families() {
    let out = run(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for needle in ["A(n)", "E8ext", "AZZ", "non-cyclotomic"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn report_json_round_trips_byte_identical() {
    let out = run(&["report", "--all", "--format", "json", "--max-k", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let line = text.trim();
    let v: serde_json::Value = serde_json::from_str(line).unwrap();
    assert_eq!(v["schema"], "1");
    let reemitted = serde_json::to_string(&v).unwrap();
    assert_eq!(line, reemitted);
    // Spot-check a record.
    let graphs = v["graphs"].as_array().unwrap();
    assert_eq!(graphs.len(), 42);
    assert_eq!(graphs[0]["graph"], "A(2)");
    assert_eq!(graphs[0]["measure"]["AlphaRoots(3)"], "1/1");
    let e7 = graphs.iter().find(|g| g["graph"] == "E7").unwrap();
    assert_eq!(e7["measure"]["cyclotomic"], false);
    assert_eq!(e7["decomposition"]["outcome"], "infeasible");
}

#[test]
fn report_requires_all_flag() {
    let out = run(&["report"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_handles_graphs_without_catalog_entries() {
    // General F graphs have no catalog measure; verification must still
    // run (and pass) rather than crash.
    let out = run(&["verify", "F(1,1,2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("decomposition-vs-loops"));
    // Norm above 2: only the series links apply.
    let out = run(&["verify", "F(3,3,3)", "--max-k", "5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn family_prints_seed_invariants() {
    let out = run(&["family", "list"]);
    assert!(stdout(&out).contains("F21-even"));
    let out = run(&["family", "F21-even", "--max-k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // k = 1 is a 6-vertex graph whose T-series matches the exceptional one.
    assert!(
        text.contains("(1-q^6)(1-q^8)/((1-q^3)(1-q^12))"),
        "got: {text}"
    );
    let out = run(&["family", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}
