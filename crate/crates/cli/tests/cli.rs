use std::process::{Command, Output};

use serde_json::Value;

fn monopole(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monopole")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let s = schema();
    if let Err(errors) = s.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    };
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn enumerate_rows_for_unit_charge() {
    let out = monopole(&["enumerate", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    let rows = v["results"].as_array().unwrap();
    let ks: Vec<&str> = rows.iter().map(|r| r["k"].as_str().unwrap()).collect();
    assert_eq!(ks, ["-1", "-1/2", "0", "1/2", "1"]);
    let mins: Vec<&str> = rows.iter().map(|r| r["j_min"].as_str().unwrap()).collect();
    assert_eq!(mins, ["1/2", "0", "1/2", "0", "1/2"]);
    assert_eq!(rows[4]["j_list"], serde_json::json!(["1/2", "3/2", "5/2", "7/2", "9/2"]));
    assert_eq!(rows[2]["free"], true);
}

#[test]
fn enumerate_csv_header() {
    let out = monopole(&["enumerate", "--k", "3/2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,j_min,j_list"));
    assert_eq!(lines.count(), 7);
    assert!(text.contains("\n3/2,1,1 2 3 4 5\n"));
}

#[test]
fn float_quantum_numbers_are_config_errors() {
    for args in [
        vec!["enumerate", "--k", "0.3"],
        vec!["radial", "--k", "1/3"],
        vec!["verify", "--suite", "jmin", "--k", "1.5"],
        vec!["radial", "--j", "abc"],
    ] {
        let out = monopole(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains("error"), "{err}");
    }
    let err = String::from_utf8(monopole(&["enumerate", "--k", "0.3"]).stderr).unwrap();
    assert!(err.contains("position 2"), "{err}");
}

#[test]
fn other_config_errors() {
    for args in [
        vec!["verify", "--grid-theta", "4"],
        vec!["verify", "--grid-phi", "9"],
        vec!["verify", "--tol", "0"],
        vec!["verify", "--suite", "bogus"],
        vec!["verify", "--format", "xml"],
        vec!["verify", "--suite", "jmin", "--k", "0"],
        vec!["radial", "--delta", "2"],
        vec!["radial", "--n", "1"],
        vec!["enumerate", "--k", "0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(monopole(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn jmin_suite_reports_sigma_annihilation() {
    let out = monopole(&["verify", "--suite", "jmin", "--k", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    let c = check(&v, "sigma_annihilation k=1/2");
    assert!(c["residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(c["pass"], true);
    assert_eq!(v["pass"], true);
    assert_eq!(v["residuals"]["sigma_annihilation k=1/2"], c["residual"]);
}

#[test]
fn algebra_reports_are_deterministic() {
    let args = ["verify", "--suite", "algebra", "--seed", "7", "--grid-theta", "16", "--grid-phi", "16"];
    let a = monopole(&args);
    let b = monopole(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let csv_args = ["verify", "--suite", "algebra", "--seed", "7", "--grid-theta", "16", "--grid-phi", "16", "--format", "csv"];
    assert_eq!(monopole(&csv_args).stdout, monopole(&csv_args).stdout);
}

#[test]
fn gauge_suite_has_invariance_table() {
    let out = monopole(&["verify", "--suite", "gauge", "--k", "1", "--grid-theta", "16", "--grid-phi", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    for g in ["D", "WY_N", "WY_S"] {
        let c = check(&v, &format!("eigen_invariance j=3/2 m=1/2 k=1 delta=+1 S->{g}"));
        assert!(c["residual"].as_f64().unwrap() < 1e-10);
        let vals = &c["values"];
        assert!((vals["m"].as_f64().unwrap() - 0.5).abs() < 1e-10);
        assert!((vals["K"].as_f64().unwrap() + 3f64.sqrt()).abs() < 1e-10);
    }
    assert_eq!(check(&v, "wy_multivalued 2k non-integer")["bound"], "min");
}

#[test]
fn every_suite_passes_on_a_small_grid() {
    let out = monopole(&["verify", "--grid-theta", "16", "--grid-phi", "16"]);
    let v = json_of(&out);
    assert_valid(&v);
    let failed: Vec<&Value> = v["results"].as_array().unwrap().iter().filter(|c| c["pass"] != true).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failures_exit_one() {
    let out = monopole(&["verify", "--suite", "wigner", "--tol", "1e-300", "--grid-theta", "16", "--grid-phi", "16"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_valid(&v);
    assert_eq!(v["pass"], false);
}

#[test]
fn m_filter_narrows_the_sweep() {
    let out = monopole(&["verify", "--suite", "jmin", "--k", "3/2", "--m-num", "-1", "--grid-theta", "16", "--grid-phi", "16"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["params"]["m"], "-1");
    let bad = monopole(&["verify", "--suite", "jmin", "--k", "1", "--m-num", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn radial_closed_form_at_jmin() {
    let out = monopole(&["radial", "--k", "1/2", "--j", "0", "--mass", "1", "--eps", "0.6", "--n", "20", "--r-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    assert_eq!(v["params"]["regime"], "decaying");
    for row in v["results"].as_array().unwrap() {
        let r = row["r"].as_f64().unwrap();
        let f = row["closed_form"][0].as_f64().unwrap();
        assert!((f - (-0.8 * r).exp()).abs() < 1e-14, "r={r}");
        assert!(row["residual"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn radial_csv_digits() {
    let out = monopole(&["radial", "--k", "1/2", "--j", "0", "--n", "4", "--r-max", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,closed_form_re,closed_form_im,partner_re,partner_im,residual,regime"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "5.0000000000000000e-1");
    let mantissa = first[1].split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17);
    let f: f64 = first[1].parse().unwrap();
    assert_eq!(f, (-0.4f64).exp());
}

#[test]
fn radial_degenerate_energy_is_flagged() {
    let out = monopole(&["radial", "--k", "1", "--eps", "1", "--mass", "1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["params"]["degenerate"], true);
    assert_eq!(v["params"]["regime"], "degenerate");
    for row in v["results"].as_array().unwrap() {
        assert_eq!(row["closed_form"][0].as_f64().unwrap(), 1.0);
    }
    assert!(String::from_utf8(out.stderr).unwrap().contains("eps = m"));
}

#[test]
fn radial_below_jmin_names_jmin() {
    let out = monopole(&["radial", "--k", "3/2", "--j", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("j_min = 1"), "{err}");
    assert_eq!(monopole(&["radial", "--k", "1", "--j", "1"]).status.code(), Some(2));
}

#[test]
fn radial_free_electron_and_reduced_pair() {
    let out = monopole(&["radial", "--k", "0", "--j", "1/2", "--n", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    assert_eq!(v["params"]["free"], true);
    assert_eq!(v["params"]["nu"], 1.0);
    let pair = json_of(&monopole(&["radial", "--k", "-1", "--j", "5/2", "--delta", "-1", "--n", "10"]));
    assert_valid(&pair);
    assert_eq!(pair["params"]["system"], "reduced pair");
    let order = pair["residuals"]["rk4_order"].as_f64().unwrap();
    assert!(order > 3.5 && order < 4.5, "{order}");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("enum.json");
    let out = monopole(&["enumerate", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid(&v);
    assert_eq!(v["command"], "enumerate");
}
