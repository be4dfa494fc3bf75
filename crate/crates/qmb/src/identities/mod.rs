//! The verification catalog. Each entry pairs two independently evaluated
//! sides of a q-series identity and knows how to sample its parameters.

mod bal87;
mod ctx;
mod gr21;
mod theta_ratio;
mod vj;
mod vwp54;
mod vwp87;
mod wp32;

use num_complex::Complex;
use qseries::{to_c64, Extended, QError, QResult, Real, EVAL_GUARD};

pub use ctx::{Ctx, Mode, SCREEN_MARGIN};

/// Bound parameter values in descriptor order, `q` first.
pub type Bound = Vec<(String, Complex<f64>)>;

/// One side of an identity as a list of terms; its value is their sum.
pub type SideFn<T> = fn(&Ctx<T>) -> QResult<Vec<Complex<T>>>;

/// Evaluators for one scalar backend.
#[derive(Clone, Copy)]
pub struct Sides<T: Real> {
    pub lhs: SideFn<T>,
    pub rhs: SideFn<T>,
    /// Modulus inequalities and exclusion checks not already enforced by
    /// the guarded denominators.
    pub constraints: fn(&Ctx<T>) -> QResult<()>,
}

/// Whether the right side goes through the contour engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Integral,
    Sum,
}

/// How the sampler draws a parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Dist {
    /// Complex, modulus uniform-in-area over the configured parameter band.
    Band,
    /// Complex, modulus uniform-in-area over `(lo, hi)`.
    Annulus(f64, f64),
    /// A point on the unit circle.
    Unit,
    /// A real positive value in `(lo, hi)`.
    Positive(f64, f64),
    /// One of a fixed set of integers.
    Choice(&'static [i32]),
}

#[derive(Clone, Copy, Debug)]
pub struct ParamRule {
    pub name: &'static str,
    pub dist: Dist,
}

/// A specialization of a free parameter that annihilates one term.
#[derive(Clone, Copy)]
pub struct Kill {
    /// Catalog id of the reduced identity.
    pub target: &'static str,
    /// Index of the vanishing right-side term, or `None` when the left side vanishes.
    pub term: Option<usize>,
    /// The value of the free parameter `h` for a given integer `n`.
    pub h: fn(&Ctx<f64>, i32) -> Complex<f64>,
}

#[derive(Clone)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    /// A verbatim quote locating the identity in the source text.
    pub anchor: &'static str,
    pub kind: Kind,
    pub params: &'static [ParamRule],
    /// Parameters the identity holds for any value of.
    pub free: &'static [&'static str],
    /// The left side contains none of the free parameters.
    pub fixed_lhs: bool,
    /// Sampling range for `|q|`, if narrower than the default.
    pub q_band: Option<(f64, f64)>,
    pub kills: &'static [Kill],
    pub f64: Sides<f64>,
    pub ext: Sides<Extended>,
}

impl std::fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDescriptor").field("id", &self.id).field("kind", &self.kind).finish()
    }
}

macro_rules! sides {
    ($lhs:ident, $rhs:ident, $cons:ident) => {
        (
            $crate::identities::Sides::<f64> { lhs: $lhs::<f64>, rhs: $rhs::<f64>, constraints: $cons::<f64> },
            $crate::identities::Sides::<qseries::Extended> {
                lhs: $lhs::<qseries::Extended>,
                rhs: $rhs::<qseries::Extended>,
                constraints: $cons::<qseries::Extended>,
            },
        )
    };
}
pub(crate) use sides;

/// Shorthand used by the family modules to build descriptors.
#[allow(clippy::too_many_arguments)]
pub(crate) fn entry(
    id: &'static str,
    anchor: &'static str,
    kind: Kind,
    params: &'static [ParamRule],
    free: &'static [&'static str],
    fixed_lhs: bool,
    kills: &'static [Kill],
    sides: (Sides<f64>, Sides<Extended>),
) -> IdentityDescriptor {
    IdentityDescriptor { id, anchor, kind, params, free, fixed_lhs, q_band: None, kills, f64: sides.0, ext: sides.1 }
}

/// The full catalog in a fixed order.
pub fn catalog() -> Vec<IdentityDescriptor> {
    let mut out = Vec::new();
    out.extend(theta_ratio::entries());
    out.extend(wp32::entries());
    out.extend(vwp54::entries());
    out.extend(vwp87::entries());
    out.extend(bal87::entries());
    out.extend(gr21::entries());
    out.extend(vj::entries());
    out
}

pub fn find(id: &str) -> Option<IdentityDescriptor> {
    catalog().into_iter().find(|d| d.id == id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Binary64,
    Extended,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Binary64 => f64::NAME,
            Precision::Extended => Extended::NAME,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "binary64" => Some(Precision::Binary64),
            "extended" => Some(Precision::Extended),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub tol: f64,
    pub eps_quad: f64,
    pub precision: Precision,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { tol: 1e-8, eps_quad: crate::contour::DEFAULT_EPS_QUAD, precision: Precision::Binary64 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: String,
    pub params: Bound,
    pub lhs: Option<Complex<f64>>,
    pub rhs: Option<Complex<f64>>,
    pub abs_residual: Option<f64>,
    pub rel_residual: Option<f64>,
    pub n_terms: usize,
    pub n_nodes: usize,
    pub status: Status,
}

/// `|l - r| / max(|l|, |r|, 1)`.
pub fn rel_residual<T: Real>(l: Complex<T>, r: Complex<T>) -> T {
    (l - r).norm() / l.norm().max(r.norm()).max(T::one())
}

fn skipped(e: &QError) -> Status {
    Status::Skipped(format!("{}: {e}", e.kind()))
}

fn sum<T: Real>(xs: &[Complex<T>]) -> Complex<T> {
    xs.iter().fold(Complex::new(T::zero(), T::zero()), |s, &x| s + x)
}

/// Evaluated sides in a backend, before conversion to a report.
struct Evaluated<T: Real> {
    lhs: Vec<Complex<T>>,
    rhs: Vec<Complex<T>>,
    n_terms: usize,
    n_nodes: usize,
    cancellation: f64,
    sigma_range: Option<(f64, f64)>,
}

fn evaluate<T: Real>(sides: &Sides<T>, bound: &Bound, opts: &CheckOptions, mode: Mode, guard: f64) -> QResult<Evaluated<T>> {
    let ctx = Ctx::<T>::new(bound, guard, opts.eps_quad, mode)?;
    (sides.constraints)(&ctx)?;
    let lhs = (sides.lhs)(&ctx)?;
    let rhs = (sides.rhs)(&ctx)?;
    let (n_terms, n_nodes) = ctx.counts();
    Ok(Evaluated { lhs, rhs, n_terms, n_nodes, cancellation: ctx.cancellation(), sigma_range: ctx.sigma_range() })
}

fn report<T: Real>(id: &str, bound: &Bound, r: QResult<Evaluated<T>>, tol: f64) -> CheckReport {
    let mut out = CheckReport {
        id: id.to_string(),
        params: bound.clone(),
        lhs: None,
        rhs: None,
        abs_residual: None,
        rel_residual: None,
        n_terms: 0,
        n_nodes: 0,
        status: Status::Pass,
    };
    match r {
        Err(e) => out.status = skipped(&e),
        Ok(ev) => {
            let (l, r) = (sum(&ev.lhs), sum(&ev.rhs));
            let rel = rel_residual(l, r).as_f64();
            out.lhs = Some(to_c64(l));
            out.rhs = Some(to_c64(r));
            out.abs_residual = Some((l - r).norm().as_f64());
            out.rel_residual = Some(rel);
            out.n_terms = ev.n_terms;
            out.n_nodes = ev.n_nodes;
            out.status = if !rel.is_finite() {
                Status::Skipped("DomainError: non-finite value".into())
            } else if rel < tol {
                Status::Pass
            } else {
                Status::Fail
            };
        }
    }
    out
}

/// Evaluates both sides at `bound` and compares them.
pub fn check(desc: &IdentityDescriptor, bound: &Bound, opts: &CheckOptions) -> CheckReport {
    match opts.precision {
        Precision::Binary64 => {
            report(desc.id, bound, evaluate(&desc.f64, bound, opts, Mode::Evaluate, EVAL_GUARD), opts.tol)
        }
        Precision::Extended => {
            report(desc.id, bound, evaluate(&desc.ext, bound, opts, Mode::Evaluate, EVAL_GUARD), opts.tol)
        }
    }
}

/// Like [`check`] but looks the id up first.
pub fn check_id(id: &str, bound: &Bound, opts: &CheckOptions) -> QResult<CheckReport> {
    let desc = find(id).ok_or_else(|| QError::DomainError(format!("unknown identity {id}")))?;
    Ok(check(&desc, bound, opts))
}

/// Runs every constraint and non-quadrature evaluator at the sampling guard
/// and returns the cancellation factor: the largest single term over
/// `max(|sum|, 1)` on either side, or `∫|f| / |∫f|` for an integral.
pub fn screen(desc: &IdentityDescriptor, bound: &Bound, guard: f64) -> QResult<f64> {
    let opts = CheckOptions::default();
    let ev = evaluate(&desc.f64, bound, &opts, Mode::Screen, guard)?;
    if !ev.lhs.iter().chain(ev.rhs.iter()).all(|x| x.re.is_finite() && x.im.is_finite()) {
        return Err(QError::DomainError("non-finite value while screening".into()));
    }
    let cancel = |xs: &[Complex<f64>]| xs.iter().fold(0.0f64, |m, x| m.max(x.norm())) / sum(xs).norm().max(1.0);
    Ok(cancel(&ev.lhs).max(cancel(&ev.rhs)).max(ev.cancellation))
}

/// The open interval of admissible contour radii `σ` for an integral entry.
pub fn sigma_range(desc: &IdentityDescriptor, bound: &Bound) -> QResult<(f64, f64)> {
    let opts = CheckOptions::default();
    let ev = evaluate(&desc.f64, bound, &opts, Mode::Screen, EVAL_GUARD)?;
    match ev.sigma_range {
        Some((lo, hi)) if lo < hi => Ok((lo, hi)),
        Some(_) => Err(QError::ConstraintViolation("empty contour annulus".into())),
        None => Err(QError::DomainError(format!("{} has no contour", desc.id))),
    }
}

/// `count` radii spread geometrically through the interior of the admissible
/// interval, avoiding both ends.
pub fn sigma_values(desc: &IdentityDescriptor, bound: &Bound, count: usize) -> QResult<Vec<Complex<f64>>> {
    let (lo, hi) = sigma_range(desc, bound)?;
    let r = hi / lo;
    Ok((1..=count).map(|j| Complex::new(lo * r.powf(j as f64 / (count + 1) as f64), 0.0)).collect())
}

/// Replaces (or appends) a bound value.
pub fn rebind(bound: &Bound, name: &str, value: Complex<f64>) -> Bound {
    let mut out = bound.clone();
    match out.iter_mut().find(|(k, _)| k == name) {
        Some(slot) => slot.1 = value,
        None => out.push((name.to_string(), value)),
    }
    out
}

pub struct SweepResult {
    pub reports: Vec<CheckReport>,
    /// Largest relative deviation among left-side values, when the left side
    /// does not depend on the swept parameter.
    pub lhs_spread: Option<f64>,
}

impl SweepResult {
    pub fn all_pass(&self, tol: f64) -> bool {
        self.reports.iter().all(|r| r.status == Status::Pass) && self.lhs_spread.is_none_or(|s| s < tol)
    }
}

/// Evaluates the identity at each value of one free parameter.
pub fn sweep_free(
    desc: &IdentityDescriptor,
    bound: &Bound,
    free: &str,
    values: &[Complex<f64>],
    opts: &CheckOptions,
) -> QResult<SweepResult> {
    if !desc.free.contains(&free) {
        return Err(QError::DomainError(format!("{free} is not a free parameter of {}", desc.id)));
    }
    let reports: Vec<_> = values.iter().map(|&v| check(desc, &rebind(bound, free, v), opts)).collect();
    let lhs_spread = if desc.fixed_lhs {
        let ls: Vec<_> = reports.iter().filter_map(|r| r.lhs).collect();
        let mut spread = 0.0f64;
        for (i, &x) in ls.iter().enumerate() {
            for &y in &ls[i + 1..] {
                spread = spread.max(rel_residual(x, y));
            }
        }
        Some(spread)
    } else {
        None
    };
    Ok(SweepResult { reports, lhs_spread })
}

/// Outcome of substituting a killing value of `h`.
#[derive(Clone, Debug)]
pub struct KillReport {
    pub source: String,
    pub target: String,
    pub n: i32,
    /// `|killed term| / max |term|`.
    pub killed_ratio: f64,
    /// Relative residual between the surviving terms and the target identity
    /// (for a vanishing left side: between the right side and zero, scaled
    /// by the largest term).
    pub reduced_residual: f64,
}

fn kill_in<T: Real>(src: &Sides<T>, dst: &Sides<T>, kill: &Kill, bound: &Bound, n: i32, opts: &CheckOptions) -> QResult<(f64, f64)> {
    let ctx0 = Ctx::<f64>::new(bound, EVAL_GUARD, opts.eps_quad, Mode::Evaluate)?;
    let h = (kill.h)(&ctx0, n);
    let at = rebind(&rebind(bound, "h", h), "n", Complex::new(n as f64, 0.0));
    let ctx = Ctx::<T>::new(&at, EVAL_GUARD, opts.eps_quad, Mode::Evaluate)?;
    let scale = |xs: &[Complex<T>]| xs.iter().fold(T::zero(), |m, x| m.max(x.norm()));
    match kill.term {
        Some(k) => {
            let rhs = (src.rhs)(&ctx)?;
            let killed = rhs[k].norm() / scale(&rhs);
            let reduced: Vec<_> = rhs.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
            let tctx = Ctx::<T>::new(&at, EVAL_GUARD, opts.eps_quad, Mode::Evaluate)?;
            let target = sum(&(dst.rhs)(&tctx)?);
            Ok((killed.as_f64(), rel_residual(sum(&reduced), target).as_f64()))
        }
        None => {
            let lhs = (src.lhs)(&ctx)?;
            let rhs = (src.rhs)(&ctx)?;
            let tctx = Ctx::<T>::new(&at, EVAL_GUARD, opts.eps_quad, Mode::Evaluate)?;
            let (tl, tr) = (sum(&(dst.lhs)(&tctx)?), sum(&(dst.rhs)(&tctx)?));
            let killed = sum(&lhs).norm() / scale(&rhs);
            let null = (sum(&rhs).norm() / scale(&rhs)).max(rel_residual(tl, tr));
            Ok((killed.as_f64(), null.as_f64()))
        }
    }
}

/// Substitutes the killing value of `h` for integer `n` and measures both the
/// annihilated term and the agreement with the reduced identity.
pub fn kill_check(desc: &IdentityDescriptor, kill: &Kill, bound: &Bound, n: i32, opts: &CheckOptions) -> QResult<KillReport> {
    let target = find(kill.target).ok_or_else(|| QError::DomainError(format!("unknown identity {}", kill.target)))?;
    let (killed_ratio, reduced_residual) = match opts.precision {
        Precision::Binary64 => kill_in(&desc.f64, &target.f64, kill, bound, n, opts)?,
        Precision::Extended => kill_in(&desc.ext, &target.ext, kill, bound, n, opts)?,
    };
    Ok(KillReport { source: desc.id.into(), target: kill.target.into(), n, killed_ratio, reduced_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let cat = catalog();
        let mut ids: Vec<_> = cat.iter().map(|d| d.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), cat.len());
        assert!(cat.len() >= 28);
    }

    #[test]
    fn kill_targets_exist() {
        for d in catalog() {
            for k in d.kills {
                assert!(find(k.target).is_some(), "{} -> {}", d.id, k.target);
            }
        }
    }

    #[test]
    fn relative_residual_floor() {
        let r = rel_residual(Complex::new(1e-20, 0.0), Complex::new(2e-20, 0.0));
        assert!(r < 1e-19);
    }
}
