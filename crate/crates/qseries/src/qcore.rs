//! q-shifted factorials, q-gamma, theta and partial theta functions.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{QError, QResult};
use crate::hyperseries::{phi, SeriesSpec};
use crate::real::Real;

/// Relative radius inside which a value counts as sitting on `q^k`.
pub const EVAL_GUARD: f64 = 1e-6;

/// The base `q` together with truncation controls.
#[derive(Clone, Copy, Debug)]
pub struct QBase<T: Real> {
    pub q: Complex<T>,
    pub eps_tail: T,
    pub n_max: usize,
    abs_q: T,
}

impl<T: Real> QBase<T> {
    pub fn new(q: Complex<T>) -> QResult<Self> {
        let abs_q = q.norm();
        if !(abs_q > T::zero() && abs_q < T::one()) {
            return Err(QError::DomainError(format!("|q| = {:e} must lie in (0,1)", abs_q.as_f64())));
        }
        Ok(QBase { q, eps_tail: T::default_eps_tail(), n_max: 10_000, abs_q })
    }

    pub fn real(q: f64) -> QResult<Self> {
        Self::new(Complex::new(T::lit(q), T::zero()))
    }

    pub fn with_tail(mut self, eps_tail: T) -> Self {
        assert!(eps_tail > T::zero(), "eps_tail must be positive");
        self.eps_tail = eps_tail;
        self
    }

    pub fn with_cap(mut self, n_max: usize) -> Self {
        assert!(n_max >= 1, "n_max must be at least 1");
        self.n_max = n_max;
        self
    }

    #[inline]
    pub fn abs_q(&self) -> T {
        self.abs_q
    }

    /// `q^n` for any integer `n`.
    #[inline]
    pub fn pow(&self, n: i32) -> Complex<T> {
        self.q.powi(n)
    }

    /// Principal square root of `q`.
    pub fn sqrt(&self) -> Complex<T> {
        self.q.sqrt()
    }

    /// The base `q^p` with the same truncation controls.
    pub fn power_base(&self, p: i32) -> QResult<Self> {
        let mut b = Self::new(self.q.powi(p))?;
        b.eps_tail = self.eps_tail;
        b.n_max = self.n_max;
        Ok(b)
    }
}

/// Ordered, labeled parameter list (the sets **a**, **b**, **c**, **d**).
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet<T: Real> {
    items: Vec<(String, Complex<T>)>,
}

impl<T: Real> ParamSet<T> {
    pub fn new() -> Self {
        ParamSet { items: Vec::new() }
    }

    /// Labels default to `p1, p2, ...`.
    pub fn from_values(values: &[Complex<T>]) -> QResult<Self> {
        let mut s = Self::new();
        for (i, v) in values.iter().enumerate() {
            s.push(format!("p{}", i + 1), *v)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, label: impl Into<String>, value: Complex<T>) -> QResult<()> {
        let label = label.into();
        if value.is_zero() {
            return Err(QError::DomainError(format!("parameter {label} is zero")));
        }
        self.items.push((label, value));
        Ok(())
    }

    /// Appends `{x, -x}`.
    pub fn push_pm(&mut self, label: &str, x: Complex<T>) -> QResult<()> {
        self.push(format!("+{label}"), x)?;
        self.push(format!("-{label}"), -x)
    }

    /// Appends `{x, ωx, ω²x}` with ω a primitive cube root of unity.
    pub fn push_omega(&mut self, label: &str, x: Complex<T>) -> QResult<()> {
        let w = omega::<T>();
        self.push(label, x)?;
        self.push(format!("w*{label}"), w * x)?;
        self.push(format!("w2*{label}"), w * w * x)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, k: usize) -> Complex<T> {
        self.items[k].1
    }

    pub fn label(&self, k: usize) -> &str {
        &self.items[k].0
    }

    pub fn values(&self) -> Vec<Complex<T>> {
        self.items.iter().map(|(_, v)| *v).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        self.items.iter().map(|(_, v)| *v)
    }

    /// The set with its `k`-th element removed.
    pub fn delete_at(&self, k: usize) -> Self {
        let mut items = self.items.clone();
        items.remove(k);
        ParamSet { items }
    }

    /// Every element multiplied by `b`.
    pub fn scale(&self, b: Complex<T>) -> Self {
        ParamSet { items: self.items.iter().map(|(l, v)| (l.clone(), *v * b)).collect() }
    }

    pub fn product(&self) -> Complex<T> {
        self.iter().fold(Complex::<T>::one(), |acc, v| acc * v)
    }

    pub fn max_abs(&self) -> T {
        self.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }
}

impl<T: Real> Default for ParamSet<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// `e^{2πi/3}`.
pub fn omega<T: Real>() -> Complex<T> {
    let t = T::lit(2.0) * T::PI() / T::lit(3.0);
    Complex::new(t.cos(), t.sin())
}

/// `(a;q)_n`.
pub fn qpoch<T: Real>(a: Complex<T>, q: &QBase<T>, n: usize) -> Complex<T> {
    let mut r = Complex::<T>::one();
    let mut t = a;
    for _ in 0..n {
        r *= Complex::<T>::one() - t;
        t *= q.q;
    }
    r
}

/// Number of factors after which `(a;q)_∞` is within `eps_tail`.
fn tail_index<T: Real>(abs_a: T, q: &QBase<T>) -> usize {
    if abs_a.is_zero() {
        return 0;
    }
    let target = q.eps_tail * (T::one() - q.abs_q);
    if abs_a < target {
        return 0;
    }
    let n = (target / abs_a).ln() / q.abs_q.ln();
    n.ceil().to_usize().unwrap_or(usize::MAX)
}

/// `(a;q)_∞`, truncated where `|a||q|^N/(1-|q|) < eps_tail`.
pub fn qpoch_inf<T: Real>(a: Complex<T>, q: &QBase<T>) -> QResult<Complex<T>> {
    let n = tail_index(a.norm(), q);
    if n > q.n_max {
        return Err(QError::CapExceeded { n_max: q.n_max });
    }
    Ok(qpoch(a, q, n))
}

/// Length of a q-shifted factorial: finite `n` or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    Finite(usize),
    Infinite,
}

/// `(a_1,...,a_k;q)_n`.
pub fn qpoch_multi<T: Real>(args: &ParamSet<T>, q: &QBase<T>, n: Extent) -> QResult<Complex<T>> {
    qpoch_all(&args.values(), q, n)
}

/// Slice form of [`qpoch_multi`].
pub fn qpoch_all<T: Real>(args: &[Complex<T>], q: &QBase<T>, n: Extent) -> QResult<Complex<T>> {
    let mut r = Complex::<T>::one();
    for &a in args {
        r *= match n {
                Extent::Finite(n) => qpoch(a, q, n),
                Extent::Infinite => qpoch_inf(a, q)?,
            };
    }
    Ok(r)
}

/// Nearest point of `{q^k}` to `a`, as `(j, relative distance)` with the
/// point written `q^{-j}`.
fn nearest_lattice<T: Real>(a: Complex<T>, q: &QBase<T>) -> (i64, T) {
    let j0 = -(a.norm().ln() / q.abs_q.ln());
    let lo = j0.floor().to_i64().unwrap_or(0) - 1;
    let mut best = (lo, T::infinity());
    for j in lo..=lo + 3 {
        let p = q.q.powi(-(j as i32));
        let d = (a - p).norm() / p.norm();
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExclusionKind {
    /// `a` sits on `q^{-k}` with `k < n_bound`, i.e. in `Ω_q^{n_bound}`.
    OmegaQ { n_bound: usize },
    /// `a` sits on `q^k` for some `k ≥ 1`.
    Upsilon,
    None,
}

/// Result of [`exclusion_check`]. `nearest_k` names the lattice point
/// `q^{-nearest_k}`; `distance` is relative to that point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExclusionWitness<T: Real> {
    pub kind: ExclusionKind,
    pub nearest_k: i64,
    pub distance: T,
}

impl<T: Real> ExclusionWitness<T> {
    pub fn is_hit(&self) -> bool {
        self.kind != ExclusionKind::None
    }
}

/// Locates `a` relative to `Ω_q = {q^{-k}: k ≥ 0}` and `Υ_q = {q^k: k ∈ ℤ}`.
pub fn exclusion_check<T: Real>(a: Complex<T>, q: &QBase<T>, guard: T) -> ExclusionWitness<T> {
    assert!(guard > T::zero(), "guard must be positive");
    if a.is_zero() || !a.norm().is_finite() {
        return ExclusionWitness { kind: ExclusionKind::None, nearest_k: 0, distance: T::one() };
    }
    let (j, d) = nearest_lattice(a, q);
    let kind = if d >= guard {
        ExclusionKind::None
    } else if j >= 0 {
        ExclusionKind::OmegaQ { n_bound: j as usize + 1 }
    } else {
        ExclusionKind::Upsilon
    };
    ExclusionWitness { kind, nearest_k: j, distance: d }
}

/// `Γ_q(x) = (q;q)_∞ / ((1-q)^{x-1} (q^x;q)_∞)` for real `0 < q < 1`.
pub fn qgamma<T: Real>(x: Complex<T>, q: &QBase<T>) -> QResult<Complex<T>> {
    if !(q.q.im.is_zero() && q.q.re > T::zero()) {
        return Err(QError::DomainError("q-gamma needs real q in (0,1)".into()));
    }
    let lnq = q.q.re.ln();
    let qx = (x * lnq).exp();
    let w = exclusion_check(qx, q, T::lit(EVAL_GUARD));
    if let ExclusionKind::OmegaQ { .. } = w.kind {
        return Err(QError::PoleAt(format!("q^x is near q^-{}", w.nearest_k)));
    }
    // Near q = 1 both products are tiny (about e^{-π²/(6(1-q))}), so take
    // the factor-wise ratio (1-q^{n+1})/(1-q^{x+n}), which stays O(1).
    let n = tail_index(qx.norm().max(q.abs_q), q);
    let one = Complex::<T>::one();
    let mut r = ((one - x) * (T::one() - q.q.re).ln()).exp();
    let mut qn = one;
    for _ in 0..n {
        r = r * (one - qn * q.q) / (one - qn * qx);
        qn *= q.q;
    }
    Ok(r)
}

/// Gaussian binomial coefficient.
pub fn qbinomial<T: Real>(n: usize, k: usize, q: &QBase<T>) -> QResult<Complex<T>> {
    if k > n {
        return Err(QError::BadIndex { n, k });
    }
    Ok(qpoch(q.q, q, n) / (qpoch(q.q, q, k) * qpoch(q.q, q, n - k)))
}

/// `ϑ(z;q) = (z, q/z; q)_∞`.
pub fn theta<T: Real>(z: Complex<T>, q: &QBase<T>) -> QResult<Complex<T>> {
    if z.is_zero() {
        return Err(QError::DomainError("theta argument is zero".into()));
    }
    Ok(qpoch_inf(z, q)? * qpoch_inf(q.q / z, q)?)
}

/// Product of `ϑ(z_i;q)`.
pub fn theta_all<T: Real>(zs: &[Complex<T>], q: &QBase<T>) -> QResult<Complex<T>> {
    let mut r = Complex::<T>::one();
    for &z in zs {
        r *= theta(z, q)?;
    }
    Ok(r)
}

/// Bilateral-sum form of `ϑ(z;q)` from the triple product, for cross-checks.
pub fn theta_bilateral<T: Real>(z: Complex<T>, q: &QBase<T>) -> QResult<Complex<T>> {
    if z.is_zero() {
        return Err(QError::DomainError("theta argument is zero".into()));
    }
    let big = z.norm().max((q.q / z).norm()).max(T::one());
    let lq = q.abs_q.ln();
    let mut n_win = 1usize;
    loop {
        let nf = T::lit(n_win as f64);
        let bound = lq * nf * (nf - T::one()) / T::lit(2.0) + nf * big.ln();
        if bound < q.eps_tail.ln() {
            break;
        }
        n_win += 1;
        if n_win > q.n_max {
            return Err(QError::CapExceeded { n_max: q.n_max });
        }
    }
    // Sum outward from n = 0 with the term recurrences t_{n+1} = -q^n z t_n
    // and t_{-n-1} = -q^{n+1}/z t_{-n}.
    let mut s = Complex::<T>::one();
    let mut up = Complex::<T>::one();
    let mut down = Complex::<T>::one();
    let mut qn = Complex::<T>::one();
    for _ in 0..n_win {
        up = -up * qn * z;
        qn *= q.q;
        down = -down * qn / z;
        s = s + up + down;
    }
    Ok(s / qpoch_inf(q.q, q)?)
}

/// Representations of the partial theta function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialThetaRep {
    /// Direct sum `Σ (-1)^n q^{n(n-1)/2} z^n / (q;q)_∞`.
    Sum,
    /// `₁φ₀` in base `q^{1/p}` padded with `p` bottom zeros.
    PadTop(u32),
    /// `(z;q)_∞ ₀φ₁^{-2}(-; z; q, q)`.
    Factored01,
    /// `(z;q)_∞/(q;q)_∞ ₀φ₁(-; z; q, qz)`.
    Factored01q,
    /// The `₄φ₃` form from the Andrews–Warnaar product formula.
    AndrewsWarnaar,
}

/// Partial theta function `Θ(z;q)` in the requested representation.
pub fn partial_theta<T: Real>(z: Complex<T>, q: &QBase<T>, rep: PartialThetaRep) -> QResult<Complex<T>> {
    let one = Complex::<T>::one();
    let factored = matches!(rep, PartialThetaRep::Factored01 | PartialThetaRep::Factored01q | PartialThetaRep::AndrewsWarnaar);
    if factored && z.norm() >= T::one() {
        return Err(QError::DomainError(format!("{rep:?} needs |z| < 1")));
    }
    let qq = qpoch_inf(q.q, q)?;
    match rep {
        PartialThetaRep::Sum => {
            let mut s = Complex::<T>::zero();
            let mut t = one;
            let mut qn = one;
            let mut small = 0;
            for _ in 0..q.n_max {
                s += t;
                t = -t * qn * z;
                qn *= q.q;
                if t.norm() < q.eps_tail * s.norm().max(T::one()) {
                    small += 1;
                    if small >= 3 {
                        return Ok(s / qq);
                    }
                } else {
                    small = 0;
                }
            }
            Err(QError::NoConvergence { n_max: q.n_max })
        }
        PartialThetaRep::PadTop(p) => {
            if p == 0 {
                return Err(QError::DomainError("padding index p must be positive".into()));
            }
            let qb = QBase::new(q.q.powf(T::one() / T::lit(p as f64)))?.with_tail(q.eps_tail).with_cap(q.n_max);
            let sign = if p % 2 == 1 { one } else { -one };
            let v = phi(&SeriesSpec { numer: vec![qb.q], denom: vec![], pad: p as i32, q: qb, z: sign * z })?;
            Ok(v / qq)
        }
        PartialThetaRep::Factored01 => {
            let v = phi(&SeriesSpec { numer: vec![], denom: vec![z], pad: -2, q: *q, z: q.q })?;
            Ok(qpoch_inf(z, q)? * v)
        }
        PartialThetaRep::Factored01q => {
            let v = phi(&SeriesSpec { numer: vec![], denom: vec![z], pad: 0, q: *q, z: q.q * z })?;
            Ok(qpoch_inf(z, q)? / qq * v)
        }
        PartialThetaRep::AndrewsWarnaar => {
            if z.is_zero() {
                return Err(QError::DomainError("AndrewsWarnaar needs z != 0".into()));
            }
            let i = Complex::new(T::zero(), T::one());
            let sz = z.sqrt();
            let sqz = (q.q * z).sqrt();
            let spec = SeriesSpec {
                numer: vec![i * sz, -i * sz, i * sqz, -i * sqz],
                denom: vec![-q.q, z, -z],
                pad: 0,
                q: *q,
                z: q.q,
            };
            let v = phi(&spec)?;
            Ok(qpoch_inf(z, q)? / (qq * qpoch_inf(-q.q, q)?) * v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn qpoch_examples() {
        let q = QBase::<f64>::real(0.5).unwrap();
        assert_eq!(qpoch(c(0.7, 0.2), &q, 0), c(1.0, 0.0));
        assert!((qpoch(q.q, &q, 2) - c(0.375, 0.0)).norm() < 1e-16);
        let q3 = QBase::<f64>::real(0.3).unwrap();
        assert_eq!(qpoch(c(0.0, 0.0), &q3, 7), c(1.0, 0.0));
        assert_eq!(qpoch_inf(c(0.0, 0.0), &q3).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn cap_is_enforced() {
        let q = QBase::<f64>::real(0.999).unwrap().with_cap(100);
        assert_eq!(qpoch_inf(c(0.5, 0.0), &q), Err(QError::CapExceeded { n_max: 100 }));
    }

    #[test]
    fn exclusion_examples() {
        let q = QBase::<f64>::real(0.5).unwrap();
        let w = exclusion_check(q.pow(-2), &q, 1e-6);
        assert_eq!(w.kind, ExclusionKind::OmegaQ { n_bound: 3 });
        assert_eq!(w.nearest_k, 2);
        assert_eq!(w.distance, 0.0);
        assert_eq!(exclusion_check(q.pow(3), &q, 1e-6).kind, ExclusionKind::Upsilon);
        assert_eq!(exclusion_check(c(0.37, 0.41), &q, 1e-3).kind, ExclusionKind::None);
    }

    #[test]
    fn qbinomial_examples() {
        let q = QBase::<f64>::real(0.5).unwrap();
        assert!((qbinomial(5, 0, &q).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((qbinomial(2, 1, &q).unwrap() - c(1.5, 0.0)).norm() < 1e-15);
        assert_eq!(qbinomial(2, 3, &q), Err(QError::BadIndex { n: 2, k: 3 }));
    }

    #[test]
    fn theta_vanishes_at_q() {
        let q = QBase::<f64>::real(0.5).unwrap();
        assert_eq!(theta(q.q, &q).unwrap().norm(), 0.0);
    }

    #[test]
    fn qgamma_at_one() {
        let q = QBase::<f64>::real(0.5).unwrap();
        assert!((qgamma(c(1.0, 0.0), &q).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        assert!(matches!(qgamma(c(-2.0, 0.0), &q), Err(QError::PoleAt(_))));
    }

    #[test]
    fn partial_theta_domain() {
        let q = QBase::<f64>::real(0.4).unwrap();
        assert!(matches!(
            partial_theta(c(1.5, 0.0), &q, PartialThetaRep::Factored01),
            Err(QError::DomainError(_))
        ));
        assert!(partial_theta(c(1.5, 0.0), &q, PartialThetaRep::Sum).is_ok());
    }
}
