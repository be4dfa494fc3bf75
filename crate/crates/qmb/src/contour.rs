//! q-Mellin–Barnes integrals over the unit circle and their residue sums.
//!
//! Integrals are taken with the periodic trapezoid rule, which converges
//! geometrically for the analytic integrands that show up here.

use num_complex::Complex;
use num_traits::{One, Zero};
use qseries::{
    exclusion_check, phi_counted, qpoch_all, theta_all, ExclusionKind, Extent, ParamSet, QBase, QError, QResult, Real,
    SeriesSpec, SeriesValue, EVAL_GUARD,
};

/// Default relative tolerance between successive ladder estimates.
pub const DEFAULT_EPS_QUAD: f64 = 1e-11;
/// The ladder starts at `2^MIN_LEVEL` nodes.
pub const MIN_LEVEL: u32 = 8;
/// Giving up after `2^MAX_LEVEL` nodes.
pub const MAX_LEVEL: u32 = 16;

/// A quadrature value with the node count it converged at.
#[derive(Clone, Copy, Debug)]
pub struct Quad<T: Real> {
    pub value: Complex<T>,
    pub n_nodes: usize,
}

/// Neumaier-compensated complex accumulator; order of additions is fixed by
/// the caller so results are reproducible.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<T: Real> {
    sum: Complex<T>,
    comp: Complex<T>,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self { sum: Complex::zero(), comp: Complex::zero() }
    }
}

fn neumaier<T: Real>(sum: &mut T, comp: &mut T, x: T) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl<T: Real> CompensatedSum<T> {
    pub fn add(&mut self, x: Complex<T>) {
        neumaier(&mut self.sum.re, &mut self.comp.re, x.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    pub fn value(&self) -> Complex<T> {
        self.sum + self.comp
    }
}

/// `ψ_j = -π + 2πj/n`.
fn node<T: Real>(j: usize, n: usize) -> T {
    -T::PI() + T::PI() * T::lit(2.0) * T::lit(j as f64) / T::lit(n as f64)
}

/// Plain trapezoid rule with `n` equispaced nodes on `[-π, π)`.
pub fn trapezoid<T: Real, F>(mut f: F, n: usize) -> QResult<Complex<T>>
where
    F: FnMut(T) -> QResult<Complex<T>>,
{
    let mut acc = CompensatedSum::default();
    for j in 0..n {
        acc.add(f(node(j, n))?);
    }
    Ok(acc.value() * (T::PI() * T::lit(2.0) / T::lit(n as f64)))
}

/// Trapezoid estimates with `n` and `n/2` nodes plus `∫|f|`, from one pass.
pub fn coarse_estimate<T: Real, F>(mut f: F, n: usize) -> QResult<(Complex<T>, Complex<T>, T)>
where
    F: FnMut(T) -> QResult<Complex<T>>,
{
    let (mut all, mut even, mut l1) = (CompensatedSum::default(), CompensatedSum::default(), T::zero());
    for j in 0..n {
        let v = f(node(j, n))?;
        all.add(v);
        if j % 2 == 0 {
            even.add(v);
        }
        l1 += v.norm();
    }
    let h = T::PI() * T::lit(2.0) / T::lit(n as f64);
    Ok((all.value() * h, even.value() * (h * T::lit(2.0)), l1 * h))
}

/// `∫_{-π}^{π} f(ψ) dψ` by node doubling from `2^8` until two successive
/// estimates agree to `eps·max(1, |estimate|)`.
pub fn try_quad_unit_circle<T: Real, F>(mut f: F, eps: T) -> QResult<Quad<T>>
where
    F: FnMut(T) -> QResult<Complex<T>>,
{
    let two_pi = T::PI() * T::lit(2.0);
    let mut n = 1usize << MIN_LEVEL;
    let mut acc = CompensatedSum::default();
    for j in 0..n {
        acc.add(f(node(j, n))?);
    }
    let mut est = acc.value() * (two_pi / T::lit(n as f64));
    loop {
        if n >= 1 << MAX_LEVEL {
            return Err(QError::QuadNoConvergence { nodes: n });
        }
        let n2 = 2 * n;
        // Only the new odd-indexed nodes are evaluated.
        for j in 0..n {
            acc.add(f(node(2 * j + 1, n2))?);
        }
        let next = acc.value() * (two_pi / T::lit(n2 as f64));
        if (next - est).norm() < eps * next.norm().max(T::one()) {
            return Ok(Quad { value: next, n_nodes: n2 });
        }
        est = next;
        n = n2;
    }
}

/// Infallible-integrand convenience wrapper.
pub fn quad_unit_circle<T: Real, F>(f: F, eps: T) -> QResult<Quad<T>>
where
    F: Fn(T) -> Complex<T>,
{
    try_quad_unit_circle(|psi| Ok(f(psi)), eps)
}

fn unit<T: Real>(psi: T) -> Complex<T> {
    Complex::new(psi.cos(), psi.sin())
}

fn max_abs<T: Real>(xs: &[Complex<T>]) -> T {
    xs.iter().fold(T::zero(), |m, x| m.max(x.norm()))
}

fn product<T: Real>(xs: &[Complex<T>]) -> Complex<T> {
    xs.iter().fold(Complex::one(), |p, &x| p * x)
}

/// Default contour radius: the geometric midpoint of the admissible interval
/// `(max|c|, 1/max|d|)`. With no `c` the lower end is 0 and `σ = min(1, U/2)`;
/// with no `d` the upper end is infinite and `σ = max(1, 2L)`.
pub fn default_sigma<T: Real>(c: &[Complex<T>], d: &[Complex<T>]) -> QResult<T> {
    let lo = max_abs(c);
    let dmax = max_abs(d);
    if lo * dmax >= T::one() {
        return Err(QError::ConstraintViolation(format!(
            "max|c|·max|d| = {:e} >= 1, no admissible contour",
            (lo * dmax).as_f64()
        )));
    }
    let two = T::lit(2.0);
    Ok(match (c.is_empty(), d.is_empty()) {
        (true, true) => T::one(),
        (true, false) => T::one().min(T::one() / (two * dmax)),
        (false, true) => T::one().max(two * lo),
        (false, false) => (lo / dmax).sqrt(),
    })
}

fn check_contour<T: Real>(c: &[Complex<T>], d: &[Complex<T>], sigma: T) -> QResult<()> {
    if !(sigma > T::zero()) {
        return Err(QError::ConstraintViolation("σ must be positive".into()));
    }
    if c.iter().any(|x| x.norm() >= sigma) {
        return Err(QError::ConstraintViolation("some |c_k| >= σ".into()));
    }
    if d.iter().any(|x| x.norm() * sigma >= T::one()) {
        return Err(QError::ConstraintViolation("some |d_l| >= 1/σ".into()));
    }
    Ok(())
}

fn off_omega<T: Real>(x: Complex<T>, q: &QBase<T>, what: &str) -> QResult<()> {
    let w = exclusion_check(x, q, T::lit(EVAL_GUARD));
    if matches!(w.kind, ExclusionKind::OmegaQ { .. }) {
        return Err(QError::ConstraintViolation(format!("{what} is within the guard of Ω_q")));
    }
    Ok(())
}

/// Parameters of the `G_m` integral.
#[derive(Clone, Debug)]
pub struct GmProblem<T: Real> {
    pub a: ParamSet<T>,
    pub b: ParamSet<T>,
    pub c: ParamSet<T>,
    pub d: ParamSet<T>,
    pub sigma: T,
    pub m: i32,
    pub q: QBase<T>,
}

impl<T: Real> GmProblem<T> {
    /// Builds the problem with the default contour radius.
    pub fn new(a: ParamSet<T>, b: ParamSet<T>, c: ParamSet<T>, d: ParamSet<T>, m: i32, q: QBase<T>) -> QResult<Self> {
        let sigma = default_sigma(&c.values(), &d.values())?;
        Ok(Self { a, b, c, d, sigma, m, q })
    }

    /// The mirror problem `(b, a, d, c)` with `m ↦ -m`.
    pub fn mirrored(&self) -> Self {
        Self {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.d.clone(),
            d: self.c.clone(),
            sigma: T::one() / self.sigma,
            m: -self.m,
            q: self.q,
        }
    }
}

/// `(q;q)_∞/(2π) σ^{-m} ∫ (bσ/z, az/σ;q)_∞ / (dσ/z, cz/σ;q)_∞ e^{imψ} dψ`.
pub fn g_m_integral<T: Real>(p: &GmProblem<T>, eps: T) -> QResult<Quad<T>> {
    let (a, b, c, d) = (p.a.values(), p.b.values(), p.c.values(), p.d.values());
    check_contour(&c, &d, p.sigma)?;
    let q = &p.q;
    let s = Complex::new(p.sigma, T::zero());
    let quad = try_quad_unit_circle(
        |psi| {
            let z = unit(psi);
            let out: Vec<_> = b.iter().map(|&x| x * s / z).chain(a.iter().map(|&x| x * z / s)).collect();
            let inn: Vec<_> = d.iter().map(|&x| x * s / z).chain(c.iter().map(|&x| x * z / s)).collect();
            let num = qpoch_all(&out, q, Extent::Infinite)?;
            let den = qpoch_all(&inn, q, Extent::Infinite)?;
            Ok(num / den * unit(psi * T::lit(p.m as f64)))
        },
        eps,
    )?;
    let pre = qpoch_all(&[q.q], q, Extent::Infinite)? / (T::PI() * T::lit(2.0)) * p.sigma.powi(-p.m);
    Ok(Quad { value: quad.value * pre, n_nodes: quad.n_nodes })
}

/// One side of the residue evaluation; `g_m_sum_c` is this applied to the
/// mirrored problem.
fn residue_sum<T: Real>(
    a: &[Complex<T>],
    b: &[Complex<T>],
    c: &[Complex<T>],
    d: &[Complex<T>],
    m: i32,
    q: &QBase<T>,
) -> QResult<SeriesValue<T>> {
    let (na, nb, nc, nd) = (a.len() as i32, b.len() as i32, c.len() as i32, d.len() as i32);
    if nd < nb {
        return Err(QError::ConstraintViolation(format!("residue sum needs D >= B, got D = {nd}, B = {nb}")));
    }
    if nd == 0 {
        // The d-side sum is empty; use the c side instead.
        return Err(QError::ConstraintViolation("residue sum needs at least one pole family".into()));
    }
    for &x in d {
        for &y in c {
            off_omega(x * y, q, "d_l·c_k")?;
        }
    }
    for (k, &dk) in d.iter().enumerate() {
        for (l, &dl) in d.iter().enumerate() {
            if k != l {
                off_omega(dl / dk, q, "d_l/d_k")?;
            }
        }
    }
    let qq = q.q;
    let zbase = q.pow(m) * product(b) / product(d);
    let mut total = Complex::zero();
    let mut n_terms = 0;
    for (k, &dk) in d.iter().enumerate() {
        let rest: Vec<_> = d.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &x)| x).collect();
        let top: Vec<_> = a.iter().map(|&x| dk * x).chain(b.iter().map(|&x| x / dk)).collect();
        let bottom: Vec<_> = c.iter().map(|&x| dk * x).chain(rest.iter().map(|&x| x / dk)).collect();
        let pre = qpoch_all(&top, q, Extent::Infinite)? / qpoch_all(&bottom, q, Extent::Infinite)? * dk.powi(m);
        let spec = SeriesSpec {
            numer: c.iter().map(|&x| dk * x).chain(b.iter().map(|&x| qq * dk / x)).collect(),
            denom: a.iter().map(|&x| dk * x).chain(rest.iter().map(|&x| qq * dk / x)).collect(),
            pad: nc - na,
            q: *q,
            z: zbase * (qq * dk).powi(nd - nb),
        };
        let v = phi_counted(&spec)?;
        total += pre * v.value;
        n_terms += v.n_terms;
    }
    Ok(SeriesValue { value: total, n_terms })
}

/// Residue sum over the poles from the `d` family (needs `D ≥ B`).
pub fn g_m_sum_d<T: Real>(p: &GmProblem<T>) -> QResult<SeriesValue<T>> {
    residue_sum(&p.a.values(), &p.b.values(), &p.c.values(), &p.d.values(), p.m, &p.q)
}

/// Residue sum over the poles from the `c` family (needs `C ≥ A`).
pub fn g_m_sum_c<T: Real>(p: &GmProblem<T>) -> QResult<SeriesValue<T>> {
    residue_sum(&p.b.values(), &p.a.values(), &p.d.values(), &p.c.values(), -p.m, &p.q)
}

/// Parameters of the symmetric two-pole-family integral with a free theta
/// parameter `f`.
#[derive(Clone, Debug)]
pub struct SymmetricProblem<T: Real> {
    pub a: ParamSet<T>,
    pub c: ParamSet<T>,
    pub d: (Complex<T>, Complex<T>),
    pub f: Complex<T>,
    pub sigma: T,
    pub q: QBase<T>,
}

impl<T: Real> SymmetricProblem<T> {
    pub fn new(a: ParamSet<T>, c: ParamSet<T>, d: (Complex<T>, Complex<T>), f: Complex<T>, q: QBase<T>) -> QResult<Self> {
        let sigma = default_sigma(&c.values(), &[d.0, d.1])?;
        Ok(Self { a, c, d, f, sigma, q })
    }

    /// `θ(f, f d₁/d₂; q)`, the factor relating `J` to `H`.
    pub fn theta_factor(&self) -> QResult<Complex<T>> {
        theta_all(&[self.f, self.f * self.d.0 / self.d.1], &self.q)
    }
}

/// `∫ ((f d₁, q d₂/f)σ/z, (f/d₂, q/(f d₁), a) z/σ;q)_∞ / ((d₁,d₂)σ/z, c z/σ;q)_∞ dψ`.
pub fn symmetric_integral<T: Real>(p: &SymmetricProblem<T>, eps: T) -> QResult<Quad<T>> {
    let (d1, d2) = p.d;
    let (a, c) = (p.a.values(), p.c.values());
    check_contour(&c, &[d1, d2], p.sigma)?;
    let q = &p.q;
    let (f, qq) = (p.f, q.q);
    let s = Complex::new(p.sigma, T::zero());
    let out_s = [f * d1, qq * d2 / f];
    let mut out_z = vec![f / d2, qq / (f * d1)];
    out_z.extend(a.iter().copied());
    try_quad_unit_circle(
        |psi| {
            let z = unit(psi);
            let top: Vec<_> = out_s.iter().map(|&x| x * s / z).chain(out_z.iter().map(|&x| x * z / s)).collect();
            let bottom: Vec<_> = [d1, d2].iter().map(|&x| x * s / z).chain(c.iter().map(|&x| x * z / s)).collect();
            Ok(qpoch_all(&top, q, Extent::Infinite)? / qpoch_all(&bottom, q, Extent::Infinite)?)
        },
        eps,
    )
}

/// The symmetric two-term sum `H` (the integral equals `2π θ(f, f d₁/d₂) H / (q;q)_∞`).
pub fn h_sum<T: Real>(p: &SymmetricProblem<T>) -> QResult<SeriesValue<T>> {
    let (a, c) = (p.a.values(), p.c.values());
    let q = &p.q;
    let pad = c.len() as i32 - a.len() as i32 - 2;
    let term = |x: Complex<T>, y: Complex<T>| -> QResult<SeriesValue<T>> {
        off_omega(y / x, q, "d₂/d₁")?;
        let top: Vec<_> = a.iter().map(|&u| x * u).collect();
        let mut bottom = vec![y / x];
        bottom.extend(c.iter().map(|&u| x * u));
        let pre = qpoch_all(&top, q, Extent::Infinite)? / qpoch_all(&bottom, q, Extent::Infinite)?;
        let mut denom = top.clone();
        denom.push(q.q * x / y);
        let spec = SeriesSpec { numer: c.iter().map(|&u| x * u).collect(), denom, pad, q: *q, z: q.q };
        let v = phi_counted(&spec)?;
        Ok(SeriesValue { value: pre * v.value, n_terms: v.n_terms })
    };
    let (d1, d2) = p.d;
    let s1 = term(d1, d2)?;
    let s2 = term(d2, d1)?;
    Ok(SeriesValue { value: s1.value + s2.value, n_terms: s1.n_terms + s2.n_terms })
}

/// The individual terms of `J`, one per element of `c`, and the total
/// number of series terms summed.
pub fn j_terms<T: Real>(p: &SymmetricProblem<T>) -> QResult<(Vec<Complex<T>>, usize)> {
    let (a, c) = (p.a.values(), p.c.values());
    let (na, nc) = (a.len() as i32, c.len() as i32);
    if nc < na + 2 {
        return Err(QError::ConstraintViolation(format!("J needs C >= A + 2, got C = {nc}, A = {na}")));
    }
    let q = &p.q;
    let (d1, d2) = p.d;
    let (f, qq) = (p.f, q.q);
    for (k, &ck) in c.iter().enumerate() {
        for (l, &cl) in c.iter().enumerate() {
            if k != l {
                off_omega(cl / ck, q, "c_l/c_k")?;
            }
        }
    }
    let zbase = qq * product(&a) / (d1 * d2 * product(&c));
    let mut terms = Vec::with_capacity(c.len());
    let mut n_terms = 0;
    for (k, &ck) in c.iter().enumerate() {
        let rest: Vec<_> = c.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &x)| x).collect();
        let mut bottom = vec![ck * d1, ck * d2];
        bottom.extend(rest.iter().map(|&x| x / ck));
        let top: Vec<_> = a.iter().map(|&x| x / ck).collect();
        let pre = theta_all(&[f * ck * d1, f / (ck * d2)], q)? * qpoch_all(&top, q, Extent::Infinite)?
            / qpoch_all(&bottom, q, Extent::Infinite)?;
        let mut numer = vec![ck * d1, ck * d2];
        numer.extend(a.iter().map(|&x| qq * ck / x));
        let spec = SeriesSpec {
            numer,
            denom: rest.iter().map(|&x| qq * ck / x).collect(),
            pad: 0,
            q: *q,
            z: zbase * (qq * ck).powi(nc - na - 2),
        };
        let v = phi_counted(&spec)?;
        terms.push(pre * v.value);
        n_terms += v.n_terms;
    }
    Ok((terms, n_terms))
}

/// The `C`-term sum `J` (the integral equals `2π J / (q;q)_∞`).
pub fn j_sum<T: Real>(p: &SymmetricProblem<T>) -> QResult<SeriesValue<T>> {
    let (terms, n_terms) = j_terms(p)?;
    Ok(SeriesValue { value: terms.into_iter().fold(Complex::zero(), |s, t| s + t), n_terms })
}
