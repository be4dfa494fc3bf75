//! Basic hypergeometric series `_{r+1}φ_s` with zero-padding index, and the
//! very-well-poised `_rW_{r-1}` shorthand.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{QError, QResult};
use crate::qcore::{QBase, EVAL_GUARD};
use crate::real::Real;

/// Terms between recomputations of the running term from scratch.
const REANCHOR: usize = 64;

/// `_{r+1}φ_s` with `r + 1 = numer.len()`, `s = denom.len()`. A negative
/// `pad` appends that many zeros on top, a positive one on the bottom.
#[derive(Clone, Debug)]
pub struct SeriesSpec<T: Real> {
    pub numer: Vec<Complex<T>>,
    pub denom: Vec<Complex<T>>,
    pub pad: i32,
    pub q: QBase<T>,
    pub z: Complex<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesClass {
    Terminating(usize),
    Entire,
    DiskConvergent,
    Divergent,
}

/// A series value with the number of terms summed.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue<T: Real> {
    pub value: Complex<T>,
    pub n_terms: usize,
}

impl<T: Real> SeriesSpec<T> {
    /// The exponent `s - r + m` of the `(-1)^k q^{k(k-1)/2}` factor.
    pub fn excess(&self) -> i32 {
        self.denom.len() as i32 - (self.numer.len() as i32 - 1) + self.pad
    }
}

/// Roundoff-level window for "exactly `q^{-n}`".
fn exact_tol<T: Real>(n: usize) -> T {
    T::lit(32.0 * (n as f64 + 1.0)) * T::epsilon()
}

/// If `a` is within `EVAL_GUARD` of `q^{-n}` for some `n ≥ 0`, returns
/// `(n, relative distance)`.
fn near_omega<T: Real>(a: Complex<T>, q: &QBase<T>) -> Option<(usize, T)> {
    if a.is_zero() || a.norm() < T::one() - T::lit(EVAL_GUARD) {
        return None;
    }
    let nf = -(a.norm().ln() / q.abs_q().ln());
    let n = nf.round().to_usize()?;
    let d = (a * q.pow(n as i32) - Complex::<T>::one()).norm();
    if d < T::lit(EVAL_GUARD) {
        Some((n, d))
    } else {
        None
    }
}

fn terminating_index<T: Real>(spec: &SeriesSpec<T>) -> QResult<Option<usize>> {
    let mut best: Option<usize> = None;
    for (i, &a) in spec.numer.iter().enumerate() {
        if let Some((n, d)) = near_omega(a, &spec.q) {
            if d > exact_tol::<T>(n) {
                // A near miss would silently truncate or not; refuse instead.
                return Err(QError::PoleInDenominator { index: i, k: n });
            }
            best = Some(best.map_or(n, |b| b.min(n)));
        }
    }
    Ok(best)
}

/// Convergence class per the padded excess `s - r + m`.
pub fn classify<T: Real>(spec: &SeriesSpec<T>) -> SeriesClass {
    let term = spec
        .numer
        .iter()
        .filter_map(|&a| near_omega(a, &spec.q).filter(|&(n, d)| d <= exact_tol::<T>(n)).map(|(n, _)| n))
        .min();
    if let Some(n) = term {
        return SeriesClass::Terminating(n);
    }
    match spec.excess() {
        e if e > 0 => SeriesClass::Entire,
        0 => SeriesClass::DiskConvergent,
        _ => SeriesClass::Divergent,
    }
}

/// Ratio `t_{k+1}/t_k` given `qk = q^k`.
#[inline]
fn term_ratio<T: Real>(spec: &SeriesSpec<T>, e: i32, qk: Complex<T>) -> QResult<Complex<T>> {
    let one = Complex::<T>::one();
    let mut num = spec.z;
    let mut den = one - qk * spec.q.q;
    for &a in &spec.numer {
        num *= one - a * qk;
    }
    for &b in &spec.denom {
        den *= one - b * qk;
    }
    if e != 0 {
        num *= (-qk).powi(e);
    }
    if den.is_zero() {
        return Err(QError::PoleInDenominator { index: 0, k: 0 });
    }
    Ok(num / den)
}

/// Sum of the series, with the number of terms used.
pub fn phi_counted<T: Real>(spec: &SeriesSpec<T>) -> QResult<SeriesValue<T>> {
    let q = &spec.q;
    let e = spec.excess();
    let terminating = terminating_index(spec)?;
    let pole_window = terminating.unwrap_or(usize::MAX);
    for (i, &b) in spec.denom.iter().enumerate() {
        if let Some((k, _)) = near_omega(b, q) {
            if k < pole_window {
                return Err(QError::PoleInDenominator { index: i, k });
            }
        }
    }
    if terminating.is_none() {
        if e < 0 {
            return Err(QError::DivergentSeries(format!("excess {e} < 0")));
        }
        if e == 0 && spec.z.norm() >= T::one() {
            return Err(QError::DivergentSeries(format!("|z| = {:e} >= 1 with zero excess", spec.z.norm().as_f64())));
        }
    }
    if spec.z.is_zero() {
        return Ok(SeriesValue { value: Complex::<T>::one(), n_terms: 1 });
    }

    let zabs = spec.z.norm();
    let mut sum = Complex::<T>::zero();
    let mut t = Complex::<T>::one();
    let mut qk = Complex::<T>::one();
    let mut small = 0;
    let mut k = 0usize;
    loop {
        sum += t;
        if Some(k) == terminating {
            return Ok(SeriesValue { value: sum, n_terms: k + 1 });
        }
        if k >= q.n_max {
            return Err(QError::NoConvergence { n_max: q.n_max });
        }
        let r = term_ratio(spec, e, qk)?;
        k += 1;
        if k.is_multiple_of(REANCHOR) {
            // Recompute t_k from exact powers of q to shed drift in q^k.
            qk = Complex::<T>::one();
            t = Complex::<T>::one();
            for j in 0..k {
                t *= term_ratio(spec, e, q.pow(j as i32))?;
            }
            qk *= q.pow(k as i32);
        } else {
            t *= r;
            qk *= q.q;
        }
        if !t.norm().is_finite() {
            return Err(QError::NoConvergence { n_max: k });
        }
        let scale = sum.norm().max(T::one());
        if t.norm() < q.eps_tail * scale {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 && terminating.is_none() {
            let rho = if e == 0 { r.norm().max(zabs) } else { r.norm() };
            if rho < T::one() && t.norm() * rho / (T::one() - rho) < q.eps_tail * scale {
                return Ok(SeriesValue { value: sum + t, n_terms: k + 1 });
            }
        }
    }
}

/// Sum of the series.
pub fn phi<T: Real>(spec: &SeriesSpec<T>) -> QResult<Complex<T>> {
    phi_counted(spec).map(|v| v.value)
}

/// `_rW_{r-1}(a; b_1..; q, z)`. `sqrt_a` pins the branch of `√a` when the
/// caller has a preferred one; otherwise the principal root is used.
#[derive(Clone, Debug)]
pub struct VWPSpec<T: Real> {
    pub a: Complex<T>,
    pub sqrt_a: Option<Complex<T>>,
    pub tail: Vec<Complex<T>>,
    pub q: QBase<T>,
    pub z: Complex<T>,
}

impl<T: Real> VWPSpec<T> {
    /// The underlying `_rφ_{r-1}` with `±q√a` on top and `±√a`, `qa/b_j` below.
    pub fn expand(&self) -> SeriesSpec<T> {
        let sa = self.sqrt_a.unwrap_or_else(|| self.a.sqrt());
        let qq = self.q.q;
        let mut numer = vec![self.a, qq * sa, -qq * sa];
        numer.extend(self.tail.iter().copied());
        let mut denom = vec![sa, -sa];
        denom.extend(self.tail.iter().map(|&b| qq * self.a / b));
        SeriesSpec { numer, denom, pad: 0, q: self.q, z: self.z }
    }
}

pub fn vwp<T: Real>(spec: &VWPSpec<T>) -> QResult<Complex<T>> {
    phi(&spec.expand())
}

pub fn vwp_counted<T: Real>(spec: &VWPSpec<T>) -> QResult<SeriesValue<T>> {
    phi_counted(&spec.expand())
}
