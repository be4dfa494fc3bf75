//! Every catalog entry at a hand-picked admissible point.

use num_complex::Complex;
use qmb::identities::{check_id, Bound, CheckOptions, Status};

fn bound(vals: &[(&str, f64, f64)]) -> Bound {
    vals.iter().map(|&(k, re, im)| (k.to_string(), Complex::new(re, im))).collect()
}

fn assert_pass(id: &str, vals: &[(&str, f64, f64)]) {
    let r = check_id(id, &bound(vals), &CheckOptions::default()).unwrap();
    println!("{id}: {:?} rel={:?} terms={} nodes={}", r.status, r.rel_residual, r.n_terms, r.n_nodes);
    assert_eq!(r.status, Status::Pass, "{id}: {r:?}");
}

const H: (&str, f64, f64) = ("h", 0.6180339887498949, 0.7861513777574233);

#[test]
fn theta_ratio() {
    for m in -2..=2 {
        let m = ("m", m as f64, 0.0);
        assert_pass("THETA_RATIO_INT", &[("q", 0.4, 0.1), ("b1", 0.3, 0.2), ("d1", 0.8, 0.1), ("d2", -0.6, 0.3), m]);
        assert_pass(
            "THETA_RATIO_SUM",
            &[("q", 0.4, 0.1), ("b1", 0.3, 0.2), ("b2", 0.5, -0.3), ("d1", 0.8, 0.1), ("d2", -0.6, 0.3), m],
        );
        assert_pass(
            "THETA_RATIO_PARTIAL",
            &[("q", 0.3, 0.05), ("b1", 0.3, 0.2), ("d1", 0.8, 0.1), ("d2", -0.6, 0.3), ("d3", 0.1, -0.7), m],
        );
    }
}

const WP: [(&str, f64, f64); 5] = [("q", 0.45, 0.05), ("a", 0.3, 0.1), ("b", 0.5, -0.2), ("c", 0.6, 0.1), ("z", 0.35, 0.2)];

#[test]
fn wp32() {
    let mut v = WP.to_vec();
    for id in ["WP32_SUM2", "WP32_FOUR_A", "WP32_FOUR_B"] {
        assert_pass(id, &v);
    }
    v.push(H);
    for id in ["WP32_INT", "WP32_FIVE"] {
        assert_pass(id, &v);
    }
}

#[test]
fn vwp54() {
    let mut v = WP.to_vec();
    assert_pass("VWP54_SUM2", &v);
    for n in -1..=2 {
        let mut w = v.clone();
        w.push(("n", n as f64, 0.0));
        assert_pass("VWP54_FOUR_A", &w);
        assert_pass("VWP54_FOUR_B", &w);
    }
    v.push(H);
    assert_pass("VWP54_INT", &v);
    assert_pass("VWP54_FIVE", &v);
}

const V87: [(&str, f64, f64); 7] = [
    ("q", 0.35, 0.05),
    ("a", 0.3, 0.1),
    ("b", 0.5, -0.2),
    ("c", 0.6, 0.1),
    ("d", 0.7, 0.1),
    ("e", 0.65, -0.15),
    ("f", 0.8, 0.05),
];

#[test]
fn vwp87() {
    let mut v = V87.to_vec();
    assert_pass("VWP87_SUM2", &v);
    for n in -1..=2 {
        let mut w = v.clone();
        w.push(("n", n as f64, 0.0));
        assert_pass("VWP87_THREE_A", &w);
        assert_pass("VWP87_THREE_B", &w);
    }
    for n in 0..=3 {
        let mut w = V87[..6].to_vec();
        w.push(("n", n as f64, 0.0));
        assert_pass("WATSON_LIMIT", &w);
    }
    v.push(H);
    assert_pass("VWP87_INT", &v);
    assert_pass("VWP87_FOUR", &v);
}

const B87: [(&str, f64, f64); 6] =
    [("q", 0.3, 0.05), ("a", 0.35, 0.1), ("b", 0.4, -0.1), ("c", 0.6, 0.1), ("d", 0.55, -0.2), ("e", 0.65, 0.1)];

#[test]
fn bal87() {
    let mut v = B87.to_vec();
    for n in -1..=2 {
        let mut w = v.clone();
        w.push(("n", n as f64, 0.0));
        for id in ["BAL87_NULL_A", "BAL87_NULL_B", "BAL87_FIVE_A", "BAL87_FIVE_B", "BAL87_FIVE_C", "BAL87_FIVE_D"] {
            assert_pass(id, &w);
        }
    }
    v.push(H);
    assert_pass("BAL87_INT", &v);
    assert_pass("BAL87_SIX", &v);
}

#[test]
fn gr21() {
    let mut v = vec![("q", 0.3, 0.05), ("a", 0.4, 0.1), ("b", 0.5, -0.2), ("c", 0.7, 0.1), ("z", 0.45, 0.2)];
    assert_pass("GR_PROD_EXPANSION", &v);
    v.push(H);
    assert_pass("PROD21_SIX", &v);
    // The integral needs a point where a separating contour exists.
    let w = [("q", 0.3, 0.05), ("a", 0.4, 0.1), ("b", 0.5, -0.2), ("c", 0.5, 0.1), ("z", 0.15, 0.05), H];
    assert_pass("PROD21_INT", &w);
    let mut s = vec![("q", 0.3, 0.05), ("a", 0.5, 0.1), ("b", 0.6, -0.1), ("z", 0.4, 0.1)];
    assert_pass("GR_SQ_EXPANSION", &s);
    s.push(H);
    assert_pass("SQ21_INT", &s);
    assert_pass("SQ21_FIVE", &s);
    let mut bd = vec![("q", 0.3, 0.05), ("a", 0.5, 0.1), ("b", 0.6, -0.1)];
    assert_pass("BD_SQ_A", &bd);
    bd.push(H);
    assert_pass("BD_SQ_B", &bd);
}

#[test]
fn vj() {
    let mut v = vec![("q", 0.3, 0.05), ("a", 0.25, 0.05), ("x", 0.6, 0.1), ("y", 0.5, -0.1), ("z", 0.7, 0.05)];
    assert_pass("VJ12_SUM2", &v);
    v.push(H);
    assert_pass("VJ12_INT", &v);
    assert_pass("VJ12_SIX", &v);
    let mut w = vec![("q", 0.3, 0.05), ("a", 0.45, 0.05), ("b", 0.6, 0.1), ("x", 0.6, 0.1), ("y", 0.5, -0.1), ("z", 0.7, 0.05)];
    assert_pass("VJ10_SUM2", &w);
    w.push(H);
    assert_pass("VJ10_INT", &w);
    assert_pass("VJ10_FIVE", &w);
}
