//! JSON-lines encoding with a fixed field order and float format, so that
//! identical runs produce identical bytes.

use std::fmt::Write;

use num_complex::Complex;
use qmb::identities::{CheckReport, Status};

/// 17 significant digits in lowercase e-notation; `null` for non-finite values.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

pub fn pair(z: Complex<f64>) -> String {
    format!("[{},{}]", num(z.re), num(z.im))
}

pub fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn opt_pair(z: Option<Complex<f64>>) -> String {
    z.map_or_else(|| "null".into(), pair)
}

/// One check result as a JSON object.
pub fn record(r: &CheckReport, seed: u64, index: usize) -> String {
    let mut s = String::with_capacity(512);
    let params: Vec<_> = r.params.iter().map(|(k, v)| format!("{}:{}", string(k), pair(*v))).collect();
    write!(
        s,
        "{{\"id\":{},\"seed\":{seed},\"index\":{index},\"params\":{{{}}},\"lhs\":{},\"rhs\":{},\"rel_residual\":{},\"status\":{}",
        string(&r.id),
        params.join(","),
        opt_pair(r.lhs),
        opt_pair(r.rhs),
        r.rel_residual.map_or_else(|| "null".into(), num),
        string(r.status.name()),
    )
    .unwrap();
    if let Status::Skipped(why) = &r.status {
        write!(s, ",\"reason\":{}", string(why)).unwrap();
    }
    write!(s, ",\"n_terms\":{},\"n_nodes\":{}}}", r.n_terms, r.n_nodes).unwrap();
    s
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn add(&mut self, status: &str) {
        self.total += 1;
        match status {
            "pass" => self.pass += 1,
            "fail" => self.fail += 1,
            _ => self.skipped += 1,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{{\"summary\":{{\"total\":{},\"pass\":{},\"fail\":{},\"skipped\":{}}}}}",
            self.total, self.pass, self.fail, self.skipped
        )
    }
}
