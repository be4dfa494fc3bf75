use std::process::{Command, Output};

use num_complex::Complex;
use qseries::{theta, QBase};

fn qmb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmb")).args(args).env_remove("QMB_PRECISION").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(line: &str) -> serde_json::Value {
    serde_json::from_str(line).unwrap()
}

fn summary(o: &Output) -> serde_json::Value {
    json(stdout(o).lines().last().unwrap())["summary"].clone()
}

#[test]
fn list_carries_anchors() {
    let o = qmb(&["--list"]);
    assert!(o.status.success());
    let lines: Vec<_> = stdout(&o).lines().map(json).collect();
    assert_eq!(lines.len(), qmb::identities::catalog().len());
    assert!(lines.iter().all(|v| v["anchor"].as_str().is_some_and(|a| !a.is_empty())));
    let o = qmb(&["check", "--list", "--id", "BAL87_*"]);
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn eval_theta_matches_library() {
    let o = qmb(&["eval", "theta", "--z", "0.3+0.2i", "--q", "0.4"]);
    assert!(o.status.success());
    let v = json(stdout(&o).trim());
    assert_eq!(v["function"], "theta");
    let got = Complex::new(v["value"][0].as_f64().unwrap(), v["value"][1].as_f64().unwrap());
    let want = theta(Complex::new(0.3, 0.2), &QBase::real(0.4).unwrap()).unwrap();
    assert!((got - want).norm() < 1e-15 * want.norm());
    // θ(q; q) contains the factor (1; q)∞.
    let o = qmb(&["eval", "theta", "--z", "0.5", "--q", "0.5"]);
    assert_eq!(json(stdout(&o).trim())["value"][0].as_f64(), Some(0.0));
}

#[test]
fn eval_other_primitives() {
    for args in [
        &["eval", "qpoch", "--a", "-0.5", "--q", "0.3", "--n", "4"][..],
        &["eval", "qpoch", "--a", "0.5", "--q", "0.3-0.1i"],
        &["eval", "qgamma", "--x", "2.5", "--q", "0.9"],
        &["eval", "partial-theta", "--z", "0.4", "--q", "0.5"],
        &["eval", "qbinomial", "--n", "6", "--k", "2", "--q", "0.5", "--precision", "extended"],
    ] {
        let o = qmb(args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(qmb(&["eval", "theta", "--q", "0.5"]).status.code(), Some(2));
    assert_eq!(qmb(&["eval", "qgamma", "--x", "0.5", "--q", "0.3+0.1i"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let o = qmb(&["check", "--id", "NOSUCH"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("matches no catalog entry"));
    assert_eq!(qmb(&["check", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(qmb(&["check", "--count", "0"]).status.code(), Some(2));
    assert_eq!(qmb(&["check", "--precision", "half"]).status.code(), Some(2));
    assert_eq!(qmb(&["bogus"]).status.code(), Some(2));
    assert_eq!(qmb(&[]).status.code(), Some(2));
}

#[test]
fn documented_check_run() {
    let o = qmb(&["check", "--id", "VWP54_*", "--count", "20", "--seed", "7", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    let s = summary(&o);
    assert_eq!(s["fail"], 0);
    assert_eq!(s["total"], 100);
}

#[test]
fn record_fields_in_order() {
    let o = qmb(&["check", "--id", "WP32_SUM2", "--count", "2"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    let keys = ["\"id\"", "\"seed\"", "\"index\"", "\"params\"", "\"lhs\"", "\"rhs\"", "\"rel_residual\"", "\"status\"", "\"n_terms\"", "\"n_nodes\""];
    let pos: Vec<_> = keys.iter().map(|k| first.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{first}");
    assert!(first.contains("e-1,") || first.contains("e0,"));
}

#[test]
fn failures_give_nonzero_status() {
    let o = qmb(&["check", "--id", "WP32_SUM2", "--count", "3", "--tol", "1e-300"]);
    assert!(!o.status.success());
    assert!(![1, 2].contains(&o.status.code().unwrap()));
    assert_eq!(summary(&o)["fail"], 3);
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["check", "--id", "VWP87_*", "--count", "4", "--seed", "3"];
    let one = qmb(&args);
    let mut more = args.to_vec();
    more.extend(["--jobs", "4"]);
    let four = qmb(&more);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn environment_precision_wins() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qmb"));
        c.args(["check", "--id", "WP32_SUM2", "--count", "2", "--precision", "binary64"]);
        match env {
            Some(v) => c.env("QMB_PRECISION", v),
            None => c.env_remove("QMB_PRECISION"),
        };
        c.output().unwrap()
    };
    let worst = |o: &Output| {
        stdout(o).lines().filter_map(|l| json(l)["rel_residual"].as_f64()).fold(0.0f64, f64::max)
    };
    let ext = run(Some("extended"));
    assert!(ext.status.success());
    assert!(worst(&ext) < 1e-25, "{}", worst(&ext));
    assert!(worst(&run(None)) > 1e-20);
    assert_eq!(run(Some("nonsense")).status.code(), Some(2));
}

#[test]
fn out_file_and_report() {
    let dir = std::env::temp_dir().join(format!("qmb-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.jsonl");
    let p = path.to_str().unwrap();
    let o = qmb(&["check", "--id", "WP32_*", "--count", "3", "--out", p]);
    assert!(o.status.success() && o.stdout.is_empty());
    let r = qmb(&["report", "--in", p]);
    assert!(r.status.success());
    let lines: Vec<_> = stdout(&r).lines().map(json).collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0]["id"], qmb::identities::catalog().iter().find(|d| d.id.starts_with("WP32")).unwrap().id);
    assert_eq!(lines[0]["pass"], 3);
    assert_eq!(lines[5]["summary"]["total"], 15);
    assert_eq!(qmb(&["report", "--in", dir.join("missing").to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn h_sweep_of_four_term_form() {
    let o = qmb(&["sweep", "--id", "VWP87_FOUR", "--free", "h", "--points", "5", "--count", "2", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = summary(&o);
    assert_eq!(s["pass"], 10);
    assert!(s["max_lhs_spread"].as_f64().unwrap() < 1e-13);
}

#[test]
fn sigma_sweep_of_integrals() {
    let o = qmb(&["sweep", "--id", "*_INT", "--free", "sigma", "--points", "3", "--count", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(summary(&o)["fail"], 0);
    assert_eq!(qmb(&["sweep", "--id", "WP32_SUM2", "--free", "h"]).status.code(), Some(2));
}
