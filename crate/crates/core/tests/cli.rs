use std::io::Write;
use std::process::{Command, Stdio};

use polydual::cli::{run, Command as Job, JobRequest};
use serde_json::{json, Value};

fn polydual(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polydual")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("bad JSON ({e}): {s}"))
}

fn close(a: &Value, b: &Value, tol: f64) -> bool {
    let (a, b) = (a.as_f64().unwrap(), b.as_f64().unwrap());
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

#[test]
fn reconstruct_round_trips_through_dual() {
    let (code, out) = polydual(&["reconstruct", "--polygon", "6,1,-2,3,0.4", "--point", "2.5,0.5", "--direction", "100deg"]);
    assert_eq!(code, 0, "{out}");
    let rec = parse(&out);
    let original: Vec<String> = rec["primary"]["distances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let rebuilt: Vec<String> = rec["b_polygon"]["distances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let a = parse(&polydual(&["dual", "--distances", &original.join(",")]).1);
    let b = parse(&polydual(&["dual", "--distances", &rebuilt.join(",")]).1);
    for key in ["R1", "L1", "R2", "L2"] {
        assert!(close(&a[key], &b[key], 1e-9), "{key}: {} vs {}", a[key], b[key]);
    }
    assert_eq!(rec["b_polygon"]["permutation"]["status"], "found");
}

#[test]
fn anchor_index_is_one_based() {
    let base = ["reconstruct", "--polygon", "5,0,0,2,0", "--point", "0.5,0.3"];
    let first = parse(&polydual(&base).1);
    assert_eq!(first["anchor_index"], 1);
    let mut third = base.to_vec();
    third.extend(["--anchor-index", "3"]);
    let third = parse(&polydual(&third).1);
    assert_eq!(third["anchor_index"], 3);
    assert!(close(&third["anchor_distance"], &first["primary"]["distances"][2], 1e-15));

    let mut zero = base.to_vec();
    zero.extend(["--anchor-index", "0"]);
    assert_eq!(polydual(&zero).0, 2);
}

#[test]
fn json_job_from_stdin_matches_flags() {
    let job = r#"{"command": "pompeiu", "payload": {"distances": [3, 5, 7]}, "tol": 1e-9, "seed": 0}"#;
    let mut child = Command::new(env!("CARGO_BIN_EXE_polydual"))
        .args(["job", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(job.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let (_, flags) = polydual(&["pompeiu", "--distances", "3,5,7"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), flags);
}

#[test]
fn averages_from_radius_and_offset() {
    let v = parse(&polydual(&["averages", "--n", "4", "--r", "1.4142135623730951", "--l", "1"]).1);
    let got: Vec<f64> = v["averages"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    for (g, want) in got.iter().zip([3.0, 13.0, 63.0]) {
        assert!((g - want).abs() <= 1e-12 * want);
    }
}

#[test]
fn inconsistent_distances_report_failure() {
    let v = parse(&polydual(&["dual", "--distances", "1,2.25,2.2360679774997896,1"]).1);
    assert_eq!(v["consistency"]["pass"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(polydual(&["dual", "--distances", "1,2"]).0, 1);
    assert_eq!(polydual(&["dual", "--distances", "1,x,2"]).0, 2);
    assert_eq!(polydual(&["dual"]).0, 2);
    assert_eq!(polydual(&["render", "--scene", "teapot"]).0, 2);
    assert_eq!(polydual(&["frobnicate"]).0, 2);
    let (code, out) = polydual(&["two-points", "--polygon", "4,0,0,1,0", "--polygon", "4,5,5,2,0"]);
    assert_eq!(code, 1);
    assert_eq!(parse(&out)["code"], "SHARED_VERTEX");
    let (code, out) = polydual(&["reconstruct", "--polygon", "4,0,0,1,0", "--point", "1,0"]);
    assert_eq!(code, 1);
    assert_eq!(parse(&out)["code"], "DEGENERATE");
}

#[test]
fn degrees_and_radians_agree() {
    let a = polydual(&["reconstruct", "--polygon", "4,0,0,1,0", "--point", "0.3,0.1", "--direction", "90deg"]).1;
    let b = polydual(&["reconstruct", "--polygon", "4,0,0,1,0", "--point", "0.3,0.1", "--direction", "1.5707963267948966"]).1;
    assert_eq!(a, b);
}

#[test]
fn svg_format_flag() {
    let (code, out) = polydual(&["two-points", "--polygon", "4,0,0,1.4142135623730951,45deg", "--polygon", "4,1,2,1,270deg", "--format", "svg"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("<?xml"));
    assert!(out.contains(r#"version="1.1""#));
    assert!(out.contains(r#"transform="scale(1,-1)""#));
    assert_eq!(out.matches("<circle ").count(), 2);
}

#[test]
fn outputs_are_newline_terminated() {
    for args in [vec!["dual", "--distances", "3,5,7"], vec!["dual", "--distances", "1,1,5"]] {
        assert!(polydual(&args).1.ends_with("}\n"));
    }
}

#[test]
fn library_runner_matches_binary() {
    let req = JobRequest::new(Job::Dual, json!({ "distances": [3.0, 5.0, 7.0] }));
    let out = run(&req);
    assert_eq!(out.exit_code, 0);
    assert_eq!(out.stdout, polydual(&["dual", "--distances", "3,5,7"]).1);
}

#[test]
fn verify_reports_agreement() {
    let v = parse(&polydual(&["verify", "--count", "3", "--n-max", "5", "--seed", "11"]).1);
    assert_eq!(v["instances"], 3);
    assert_eq!(v["pass"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 3);
}
