//! Askey–Wilson weight and its moments, computed three independent ways.

use num_complex::Complex;
use num_traits::{One, Zero};
use qseries::{
    exclusion_check, from_c64, qbinomial, qpoch, qpoch_all, to_c64, vwp_counted, ExclusionKind, Extended, Extent,
    QBase, QError,
    QResult, Real, VWPSpec, EVAL_GUARD,
};

use crate::contour::{try_quad_unit_circle, Quad};

/// Largest moment order accepted; binomial weights grow too fast beyond it.
pub const N_MAX: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct AWParams<T: Real> {
    pub a: [Complex<T>; 4],
    pub q: QBase<T>,
}

/// The two displayed forms of the weight numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightForm {
    /// `(e^{±2iθ};q)_∞` over the parameter products.
    Squares,
    /// The same numerator split as `(±e^{±iθ}, ±√q e^{±iθ};q)_∞`.
    Split,
}

impl<T: Real> AWParams<T> {
    pub fn new(a: [Complex<T>; 4], q: QBase<T>) -> QResult<Self> {
        for (i, &x) in a.iter().enumerate() {
            if matches!(exclusion_check(x, &q, T::lit(EVAL_GUARD)).kind, ExclusionKind::OmegaQ { .. }) {
                return Err(QError::ConstraintViolation(format!("parameter {i} is within the guard of Ω_q")));
            }
        }
        Ok(Self { a, q })
    }

    fn abcd(&self) -> Complex<T> {
        self.a[0] * self.a[1] * self.a[2] * self.a[3]
    }

    fn pair_products(&self) -> Vec<Complex<T>> {
        let a = &self.a;
        vec![a[0] * a[1], a[0] * a[2], a[0] * a[3], a[1] * a[2], a[1] * a[3], a[2] * a[3]]
    }
}

pub fn aw_weight<T: Real>(theta: T, p: &AWParams<T>, form: WeightForm) -> QResult<Complex<T>> {
    let q = &p.q;
    let z = Complex::new(theta.cos(), theta.sin());
    let zi = z.conj();
    let num = match form {
        WeightForm::Squares => qpoch_all(&[z * z, zi * zi], q, Extent::Infinite)?,
        WeightForm::Split => {
            let s = q.sqrt();
            qpoch_all(&[z, -z, s * z, -s * z, zi, -zi, s * zi, -s * zi], q, Extent::Infinite)?
        }
    };
    let den: Vec<_> = p.a.iter().flat_map(|&x| [x * z, x * zi]).collect();
    Ok(num / qpoch_all(&den, q, Extent::Infinite)?)
}

fn check_order(n: usize) -> QResult<()> {
    if n > N_MAX {
        return Err(QError::DomainError(format!("moment order {n} exceeds {N_MAX}")));
    }
    Ok(())
}

/// `μ_n` by quadrature of `w(θ) cos^n θ` over `[-π, π]`.
pub fn mu_quadrature<T: Real>(n: usize, p: &AWParams<T>, eps: T) -> QResult<Quad<T>> {
    check_order(n)?;
    let q = &p.q;
    let mut top = vec![q.q];
    top.extend(p.pair_products());
    let pre = qpoch_all(&top, q, Extent::Infinite)?
        / (qpoch_all(&[p.abcd()], q, Extent::Infinite)? * T::PI() * T::lit(4.0));
    let integral = try_quad_unit_circle(
        |theta: T| Ok(aw_weight(theta, p, WeightForm::Squares)? * theta.cos().powi(n as i32)),
        eps,
    )?;
    Ok(Quad { value: pre * integral.value, n_nodes: integral.n_nodes })
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `μ_n` as the binomial sum over `|n - 2k|` of the symmetric
/// four-term combination of `₆W₅` series.
pub fn mu_symmetric<T: Real>(n: usize, p: &AWParams<T>) -> QResult<(Complex<T>, usize)> {
    check_order(n)?;
    let q = &p.q;
    let abcd = p.abcd();
    for i in 0..4 {
        for j in 0..4 {
            if i != j && exclusion_check(p.a[i] / p.a[j], q, T::lit(EVAL_GUARD)).is_hit() {
                return Err(QError::ConstraintViolation(format!("a_{i}/a_{j} is within the guard of Υ_q")));
            }
        }
    }
    let pre = qpoch_all(&p.pair_products(), q, Extent::Infinite)?
        / (qpoch_all(&[abcd], q, Extent::Infinite)? * T::lit(2.0).powi(n as i32 + 1));
    let mut total = Complex::zero();
    let mut n_terms = 0;
    for k in 0..=n {
        let m = (n as i32 - 2 * k as i32).abs();
        let mut inner = Complex::zero();
        for i in 0..4 {
            let x = p.a[i];
            let others: Vec<_> = (0..4).filter(|&j| j != i).map(|j| p.a[j]).collect();
            let mut bottom: Vec<_> = others.iter().map(|&y| x * y).collect();
            bottom.extend(others.iter().map(|&y| y / x));
            let head = qpoch_all(&[(x * x).inv()], q, Extent::Infinite)? * x.powi(m)
                / qpoch_all(&bottom, q, Extent::Infinite)?;
            let w = vwp_counted(&VWPSpec {
                a: x * x,
                sqrt_a: Some(x),
                tail: others.iter().map(|&y| x * y).collect(),
                q: *q,
                z: q.pow(1 + m) / abcd,
            })?;
            inner += head * w.value;
            n_terms += w.n_terms;
        }
        total += inner * T::lit(binomial(n, k));
    }
    Ok((pre * total, n_terms))
}

/// `μ_n` from the terminating triple sum in a free parameter `t`, divided by
/// `2^n` to match the normalization `μ_0 = 1` of the quadrature route.
pub fn mu_kim_stanton<T: Real>(n: usize, t: Complex<T>, p: &AWParams<T>) -> QResult<(Complex<T>, usize)> {
    check_order(n)?;
    let q = &p.q;
    let qq = q.q;
    let abcd = p.abcd();
    let mut total = Complex::zero();
    let mut n_terms = 0;
    for k in 0..=n {
        let lead = qpoch(t * t, q, k) * qpoch(abcd, q, k);
        if lead.norm() < T::lit(EVAL_GUARD) {
            return Err(QError::PoleAt(format!("(t², abcd; q)_{k} vanishes")));
        }
        let mut tail = vec![q.pow(-(k as i32))];
        tail.extend(p.a.iter().map(|&x| t / x));
        let w = vwp_counted(&VWPSpec { a: t * t / qq, sqrt_a: Some(t / q.sqrt()), tail, q: *q, z: q.pow(k as i32) * abcd })?;
        n_terms += w.n_terms;
        let pre = (-qq).powi(k as i32) * p.a.iter().fold(Complex::<T>::one(), |acc, &x| acc * qpoch(t * x, q, k)) / lead;
        let mut inner = Complex::zero();
        for s in 0..=n / 2 {
            let coef = binomial(n, s) - if s >= 1 { binomial(n, s - 1) } else { 0.0 };
            if coef == 0.0 || n < 2 * s + k {
                continue;
            }
            for pp in 0..=(n - 2 * s - k) {
                let e = k as i32 * (2 * s as i32 + pp as i32 - n as i32) + (k * k.saturating_sub(1) / 2) as i32;
                inner += qbinomial(k + pp, k, q)? * qbinomial(n - 2 * s - pp, k, q)? * q.pow(e)
                    * t.powi(2 * pp as i32 + 2 * s as i32 - n as i32)
                    * T::lit(coef);
            }
        }
        total += pre * w.value * inner;
    }
    Ok((total / T::lit(2.0).powi(n as i32), n_terms))
}

/// [`mu_kim_stanton`] for binary64 parameters, summed in quad precision.
/// The triple sum cancels heavily once `n` exceeds about 4 (binary64 keeps
/// only 1e-8 at `n = 6` for parameters near the unit circle).
pub fn mu_kim_stanton_extended(n: usize, t: Complex<f64>, p: &AWParams<f64>) -> QResult<(Complex<f64>, usize)> {
    let pe = AWParams { a: p.a.map(from_c64::<Extended>), q: QBase::new(from_c64(p.q.q))? };
    let (v, n_terms) = mu_kim_stanton(n, from_c64(t), &pe)?;
    Ok((to_c64(v), n_terms))
}
