use std::process::{Command, Output};

use serde_json::Value;

fn qc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qc")).args(args).output().expect("run qc")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn analyze_examples() {
    let out = qc(&["analyze", "1", "0", "0", "0", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["galois"], "V4");
    assert_eq!(v["stabilizers"].as_array().unwrap().len(), 3);

    let v = json(&qc(&["analyze", "1", "0", "0", "0", "-2"]));
    assert_eq!(v["galois"], "D4");
    let st = v["stabilizers"].as_array().unwrap();
    assert_eq!(st.len(), 1);
    assert_eq!(st[0]["f"], serde_json::json!([0, 1, 0]));
    assert_eq!(st[0]["H_f"], 72);

    assert_eq!(json(&qc(&["analyze", "1", "1", "1", "1", "1"]))["galois"], "C4");
}

#[test]
fn degenerate_quartic_is_a_domain_error() {
    let out = qc(&["analyze", "1", "2", "1", "0", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qc(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(qc(&["count", "1", "0"]).status.code(), Some(2));
    assert_eq!(qc(&["analyze", "1", "0", "1"]).status.code(), Some(2));
    assert_eq!(qc(&[]).status.code(), Some(2));
}

#[test]
fn count_reports() {
    let v = json(&qc(&["count", "1", "0", "1", "200"]));
    assert_eq!(v["f"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["X"], 200);
    assert_eq!(v["r_f"], 2);
    assert!(v["ratio"].is_number());
    let empty = json(&qc(&["count", "2", "0", "1", "0"]));
    assert_eq!(empty["raw"], 0);
    assert_eq!(empty["N_D4"], 0);
}

#[test]
fn count_canonicalizes_with_notice() {
    let out = qc(&["count", "0", "1", "0", "100"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("canonical"));
    let v = json(&out);
    assert_eq!(v["f"], serde_json::json!([1, 1, 0]));
    assert_eq!(v["input_f"], serde_json::json!([0, 1, 0]));
}

#[test]
fn count_rejects_imprimitive() {
    let out = qc(&["count", "2", "0", "2", "100"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn count_csv_columns() {
    let out = qc(&["count", "1", "1", "-1", "300", "--report", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "f_alpha,f_beta,f_gamma,X,raw,N_D4,N_C4,N_V4,red1,red2,main_term,r_f,s_f,elapsed_ms"
    );
    assert!(lines[1].starts_with("1,1,-1,300,"));
    assert_eq!(lines[1].split(',').count(), 14);
}

#[test]
fn thread_count_does_not_change_results() {
    let strip = |out: Output| {
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let one = strip(qc(&["--threads", "1", "count", "1", "1", "0", "400"]));
    let two = strip(qc(&["--threads", "3", "count", "1", "1", "0", "400"]));
    assert_eq!(one, two);
    let env = Command::new(env!("CARGO_BIN_EXE_qc"))
        .env("QC_THREADS", "2")
        .args(["count", "1", "1", "0", "400"])
        .output()
        .unwrap();
    assert_eq!(strip(env), one);
}

#[test]
fn pell_and_neg_pell() {
    let v = json(&qc(&["pell", "5"]));
    assert_eq!((v["u"].as_i64(), v["v"].as_i64(), v["norm"].as_i64()), (Some(1), Some(1), Some(-4)));
    assert_eq!(v["t_D"].as_f64(), Some(0.481212));
    let v = json(&qc(&["neg-pell", "1", "2"]));
    assert_eq!(v["negative_pell"], true);
    assert_eq!(v["agree"], true);
    assert_eq!(qc(&["pell", "9"]).status.code(), Some(1));
}

#[test]
fn lattice_and_orthogonal() {
    let v = json(&qc(&["lattice", "1", "1", "-1"]));
    assert_eq!(v["det"], v["predicted_det"]);
    assert_eq!(v["det"], 8);
    let v = json(&qc(&["orthogonal", "1", "1", "1"]));
    assert_eq!(v["finite_elements"].as_array().unwrap().len(), 12);
    assert_eq!(v["r_f"], 6);
}

#[test]
fn verify_runs() {
    let out = qc(&["verify", "negpell", "--dmax", "500"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);
    let out = qc(&["verify", "determinants"]);
    assert_eq!(json(&out)["passed"], true);
    let out = qc(&["verify", "census", "--f", "1,1,-1", "--x", "100"]);
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn census_output() {
    let v = json(&qc(&["census", "200"]));
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
    assert!(v["predicted"].as_f64().unwrap() > 0.0);
}
