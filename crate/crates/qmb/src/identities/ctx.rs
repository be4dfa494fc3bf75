//! Evaluation context shared by the identity evaluators: bound parameters,
//! guarded denominators, and term/node bookkeeping.

use std::cell::Cell;

use num_complex::Complex;
use num_traits::One;
use qseries::{
    exclusion_check, from_c64, phi_counted, qpoch_all, theta_all, ExclusionKind, Extent, QBase, QError, QResult, Real,
    SeriesSpec, VWPSpec,
};

use crate::contour::{coarse_estimate, default_sigma, try_quad_unit_circle};

/// Factor applied to the right side of modulus inequalities when screening.
pub const SCREEN_MARGIN: f64 = 0.9;
/// Nodes of the coarse trapezoid used in place of quadrature when screening.
pub const SCREEN_NODES: usize = 512;
/// Largest accepted gap between the coarse estimates at `SCREEN_NODES` and
/// half as many nodes, relative to the finer one.
pub const SCREEN_QUAD_GAP: f64 = 0.1;

/// How much of an evaluation to actually perform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Full evaluation.
    Evaluate,
    /// Check every constraint but skip quadrature (used by the sampler).
    Screen,
}

pub struct Ctx<T: Real> {
    pub q: QBase<T>,
    vals: Vec<(String, Complex<T>)>,
    guard: T,
    eps_quad: T,
    mode: Mode,
    n_terms: Cell<usize>,
    n_nodes: Cell<usize>,
    cancellation: Cell<f64>,
    sigma_range: Cell<Option<(f64, f64)>>,
}

fn violation(what: &str, x: Complex<f64>, nearest_k: i64) -> QError {
    let k = -nearest_k;
    QError::ConstraintViolation(format!("{what} ({:.6e}{:+.6e}i) within guard of q^{k}", x.re, x.im))
}

impl<T: Real> Ctx<T> {
    pub fn new(bound: &[(String, Complex<f64>)], guard: f64, eps_quad: f64, mode: Mode) -> QResult<Self> {
        let q = bound
            .iter()
            .find(|(k, _)| k == "q")
            .map(|(_, v)| *v)
            .ok_or_else(|| QError::DomainError("missing parameter q".into()))?;
        Ok(Self {
            q: QBase::new(from_c64(q))?,
            vals: bound.iter().map(|(k, v)| (k.clone(), from_c64(*v))).collect(),
            guard: T::lit(guard),
            eps_quad: T::lit(eps_quad),
            mode,
            n_terms: Cell::new(0),
            n_nodes: Cell::new(0),
            cancellation: Cell::new(1.0),
            sigma_range: Cell::new(None),
        })
    }

    /// Bound value of a named parameter. Descriptors guarantee presence.
    pub fn p(&self, name: &str) -> Complex<T> {
        self.vals
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("parameter {name} is not bound"))
    }

    pub fn has(&self, name: &str) -> bool {
        self.vals.iter().any(|(k, _)| k == name)
    }

    /// Integer-valued parameter such as `n` or `m`.
    pub fn int(&self, name: &str) -> i32 {
        self.p(name).re.as_f64().round() as i32
    }

    pub fn qq(&self) -> Complex<T> {
        self.q.q
    }

    pub fn k(&self, x: f64) -> Complex<T> {
        Complex::new(T::lit(x), T::zero())
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.n_terms.get(), self.n_nodes.get())
    }

    /// Largest `∫|f| / |∫f|` seen by the screening integrals.
    pub fn cancellation(&self) -> f64 {
        self.cancellation.get()
    }

    /// Open interval of contour radii separating the pole families, as
    /// recorded by the last contour built.
    pub fn sigma_range(&self) -> Option<(f64, f64)> {
        self.sigma_range.get()
    }

    pub fn record_sigma_range(&self, lo: T, hi: T) {
        self.sigma_range.set(Some((lo.as_f64(), hi.as_f64())));
    }

    /// Screening stand-in for a quadrature: a coarse trapezoid estimate,
    /// rejected when it has visibly not settled yet.
    fn coarse<F>(&self, f: F) -> QResult<Complex<T>>
    where
        F: FnMut(T) -> QResult<Complex<T>>,
    {
        let (fine, half, l1) = coarse_estimate(f, SCREEN_NODES)?;
        if !((fine - half).norm() <= T::lit(SCREEN_QUAD_GAP) * fine.norm()) {
            return Err(QError::QuadNoConvergence { nodes: SCREEN_NODES });
        }
        let c = (l1 / fine.norm()).as_f64();
        self.cancellation.set(self.cancellation.get().max(c));
        Ok(fine)
    }

    fn guard_omega(&self, x: Complex<T>, base: &QBase<T>, what: &str) -> QResult<()> {
        let w = exclusion_check(x, base, self.guard);
        if let ExclusionKind::OmegaQ { .. } = w.kind {
            return Err(violation(what, qseries::to_c64(x), w.nearest_k));
        }
        Ok(())
    }

    fn guard_upsilon(&self, x: Complex<T>, what: &str) -> QResult<()> {
        let w = exclusion_check(x, &self.q, self.guard);
        if w.is_hit() {
            return Err(violation(what, qseries::to_c64(x), w.nearest_k));
        }
        Ok(())
    }

    /// `(xs;q)_∞` in a numerator.
    pub fn poch(&self, xs: &[Complex<T>]) -> QResult<Complex<T>> {
        qpoch_all(xs, &self.q, Extent::Infinite)
    }

    /// `(xs;q)_∞` in a denominator: every entry must keep off `Ω_q`.
    pub fn dpoch(&self, xs: &[Complex<T>]) -> QResult<Complex<T>> {
        self.dpoch_on(&self.q, xs)
    }

    pub fn poch_on(&self, base: &QBase<T>, xs: &[Complex<T>]) -> QResult<Complex<T>> {
        qpoch_all(xs, base, Extent::Infinite)
    }

    pub fn dpoch_on(&self, base: &QBase<T>, xs: &[Complex<T>]) -> QResult<Complex<T>> {
        for &x in xs {
            self.guard_omega(x, base, "denominator factor")?;
        }
        qpoch_all(xs, base, Extent::Infinite)
    }

    /// `num / den` of infinite products.
    pub fn ratio(&self, num: &[Complex<T>], den: &[Complex<T>]) -> QResult<Complex<T>> {
        Ok(self.poch(num)? / self.dpoch(den)?)
    }

    pub fn th(&self, xs: &[Complex<T>]) -> QResult<Complex<T>> {
        theta_all(xs, &self.q)
    }

    /// Theta product in a denominator: every argument must keep off `Υ_q`.
    pub fn dth(&self, xs: &[Complex<T>]) -> QResult<Complex<T>> {
        for &x in xs {
            self.guard_upsilon(x, "theta argument")?;
        }
        theta_all(xs, &self.q)
    }

    /// Theta quotient `θ(num) / θ(den)`.
    pub fn th_ratio(&self, num: &[Complex<T>], den: &[Complex<T>]) -> QResult<Complex<T>> {
        Ok(self.th(num)? / self.dth(den)?)
    }

    pub fn phi(&self, numer: &[Complex<T>], denom: &[Complex<T>], z: Complex<T>) -> QResult<Complex<T>> {
        self.phi_on(&self.q, numer, denom, 0, z)
    }

    /// `_{r+1}φ_s` on an explicit base with zero padding.
    pub fn phi_on(
        &self,
        base: &QBase<T>,
        numer: &[Complex<T>],
        denom: &[Complex<T>],
        pad: i32,
        z: Complex<T>,
    ) -> QResult<Complex<T>> {
        let spec = SeriesSpec { numer: numer.to_vec(), denom: denom.to_vec(), pad, q: *base, z };
        self.series(spec)
    }

    /// `_rW_{r-1}(a; tail; base, z)` with a pinned `√a`.
    pub fn w_on(
        &self,
        base: &QBase<T>,
        a: Complex<T>,
        sqrt_a: Complex<T>,
        tail: &[Complex<T>],
        z: Complex<T>,
    ) -> QResult<Complex<T>> {
        let spec = VWPSpec { a, sqrt_a: Some(sqrt_a), tail: tail.to_vec(), q: *base, z }.expand();
        self.series(spec)
    }

    pub fn w(&self, a: Complex<T>, sqrt_a: Complex<T>, tail: &[Complex<T>], z: Complex<T>) -> QResult<Complex<T>> {
        self.w_on(&self.q, a, sqrt_a, tail, z)
    }

    fn series(&self, spec: SeriesSpec<T>) -> QResult<Complex<T>> {
        let term_index = terminating_index(&spec, self.guard)?;
        for &b in &spec.denom {
            let w = exclusion_check(b, &spec.q, self.guard);
            if let ExclusionKind::OmegaQ { n_bound } = w.kind {
                // A denominator q^{-k} is harmless past the termination point.
                if term_index.is_none_or(|n| n_bound <= n) {
                    return Err(violation("series denominator", qseries::to_c64(b), w.nearest_k));
                }
            }
        }
        let v = phi_counted(&spec)?;
        self.n_terms.set(self.n_terms.get() + v.n_terms);
        Ok(v.value)
    }

    /// A modulus inequality `lhs < rhs`. Screening asks for a margin so that
    /// accepted points do not sit where the series barely converge.
    pub fn less(&self, what: &str, lhs: T, rhs: T) -> QResult<()> {
        let rhs = if self.mode == Mode::Screen { rhs * T::lit(SCREEN_MARGIN) } else { rhs };
        if lhs < rhs {
            Ok(())
        } else {
            Err(QError::ConstraintViolation(format!("{what} fails: {:e} >= {:e}", lhs.as_f64(), rhs.as_f64())))
        }
    }

    /// Raw symmetric contour integral
    /// `∫ ((f d₁, q d₂/f)σ/z, (f/d₂, q/(f d₁), a) z/σ;q)_∞ / ((d₁,d₂)σ/z, c z/σ;q)_∞ dψ`
    /// with `σ` from the bound `sigma` if present, otherwise the default.
    pub fn sym_integral(
        &self,
        a: &[Complex<T>],
        c: &[Complex<T>],
        d: (Complex<T>, Complex<T>),
        f: Complex<T>,
    ) -> QResult<Complex<T>> {
        let (d1, d2) = d;
        if self.mode == Mode::Screen {
            let mc = c.iter().fold(T::zero(), |m, x| m.max(x.norm()));
            self.less("max|c|·max|d| < 1", mc * d1.norm().max(d2.norm()), T::one())?;
        }
        let mc = c.iter().fold(T::zero(), |m, x| m.max(x.norm()));
        self.record_sigma_range(mc, T::one() / d1.norm().max(d2.norm()));
        let sigma = if self.has("sigma") { self.p("sigma").re } else { default_sigma(c, &[d1, d2])? };
        if c.iter().any(|x| x.norm() >= sigma) || [d1, d2].iter().any(|x| x.norm() * sigma >= T::one()) {
            return Err(QError::ConstraintViolation("contour does not separate the pole families".into()));
        }
        let qq = self.qq();
        let s = Complex::new(sigma, T::zero());
        let out_s = [f * d1, qq * d2 / f];
        let mut out_z = vec![f / d2, qq / (f * d1)];
        out_z.extend_from_slice(a);
        let f = |psi: T| {
            let z = Complex::new(psi.cos(), psi.sin());
            let top: Vec<_> = out_s.iter().map(|&x| x * s / z).chain(out_z.iter().map(|&x| x * z / s)).collect();
            let bot: Vec<_> = [d1, d2].iter().map(|&x| x * s / z).chain(c.iter().map(|&x| x * z / s)).collect();
            Ok(qpoch_all(&top, &self.q, Extent::Infinite)? / qpoch_all(&bot, &self.q, Extent::Infinite)?)
        };
        if self.mode == Mode::Screen {
            return self.coarse(f);
        }
        let quad = try_quad_unit_circle(f, self.eps_quad)?;
        self.n_nodes.set(self.n_nodes.get() + quad.n_nodes);
        Ok(quad.value)
    }

    /// Contour integral of an arbitrary integrand in `z = e^{iψ}`.
    pub fn integral<F>(&self, f: F) -> QResult<Complex<T>>
    where
        F: FnMut(Complex<T>) -> QResult<Complex<T>>,
    {
        let mut f = f;
        if self.mode == Mode::Screen {
            return self.coarse(|psi: T| f(Complex::new(psi.cos(), psi.sin())));
        }
        let quad = try_quad_unit_circle(|psi: T| f(Complex::new(psi.cos(), psi.sin())), self.eps_quad)?;
        self.n_nodes.set(self.n_nodes.get() + quad.n_nodes);
        Ok(quad.value)
    }

    /// Records series terms summed outside [`Ctx::phi_on`].
    pub fn add_terms(&self, n: usize) {
        self.n_terms.set(self.n_terms.get() + n);
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn two_pi(&self) -> Complex<T> {
        self.k(2.0) * T::PI()
    }
}

/// A numerator within the guard of `q^{-n}` must be exactly on it;
/// otherwise the truncation point is ill-defined.
fn terminating_index<T: Real>(spec: &SeriesSpec<T>, guard: T) -> QResult<Option<usize>> {
    let mut best: Option<usize> = None;
    for &a in &spec.numer {
        let w = exclusion_check(a, &spec.q, guard);
        if let ExclusionKind::OmegaQ { n_bound } = w.kind {
            let n = n_bound - 1;
            let exact = (a * spec.q.pow(n as i32) - Complex::<T>::one()).norm();
            if exact > T::lit(32.0 * (n as f64 + 1.0)) * T::epsilon() {
                return Err(violation("series numerator", qseries::to_c64(a), w.nearest_k));
            }
            best = Some(best.map_or(n, |b: usize| b.min(n)));
        }
    }
    Ok(best)
}
