//! Contour integral of a ratio of theta products, with its residue sum, the
//! geometric form for equal counts and the partial theta form otherwise.

use num_complex::Complex;
use qseries::{partial_theta, PartialThetaRep, QResult, Real};

use super::{entry, sides, Ctx, Dist, IdentityDescriptor, Kind, ParamRule};

type C<T> = Complex<T>;

const M: Dist = Dist::Choice(&[-2, -1, 0, 1, 2]);
const D: Dist = Dist::Annulus(0.6, 0.95);

fn tops<T: Real>(c: &Ctx<T>) -> (Vec<C<T>>, Vec<C<T>>) {
    let pick = |names: &[&str]| names.iter().filter(|n| c.has(n)).map(|n| c.p(n)).collect::<Vec<_>>();
    (pick(&["b1", "b2"]), pick(&["d1", "d2", "d3"]))
}

/// The bound `sigma`, otherwise the geometric midpoint of `(|q|/min|d|, 1/max|d|)`.
fn sigma<T: Real>(c: &Ctx<T>, d: &[C<T>]) -> T {
    if c.has("sigma") {
        return c.p("sigma").re;
    }
    let lo = d.iter().fold(T::infinity(), |m, x| m.min(x.norm()));
    let hi = d.iter().fold(T::zero(), |m, x| m.max(x.norm()));
    (c.q.abs_q() / (lo * hi)).sqrt()
}

fn prod<T: Real>(xs: &[C<T>]) -> C<T> {
    xs.iter().fold(C::new(T::one(), T::zero()), |p, &x| p * x)
}

pub fn constraints<T: Real>(c: &Ctx<T>) -> QResult<()> {
    let (b, d) = tops(c);
    let s = sigma(c, &d);
    let lo = d.iter().fold(T::infinity(), |m, x| m.min(x.norm()));
    let hi = d.iter().fold(T::zero(), |m, x| m.max(x.norm()));
    c.record_sigma_range(c.q.abs_q() / lo, T::one() / hi);
    for x in &d {
        c.less("|q| < |d|σ", c.q.abs_q(), x.norm() * s)?;
        c.less("|d|σ < 1", x.norm() * s, T::one())?;
    }
    for (k, &dk) in d.iter().enumerate() {
        for (l, &dl) in d.iter().enumerate() {
            if k != l {
                c.dth(&[dl / dk])?;
            }
        }
    }
    if b.len() == d.len() {
        c.less("|b₁⋯b_B| < |d₁⋯d_D|", prod(&b).norm(), prod(&d).norm())?;
    }
    Ok(())
}

/// `∫ θ(bσ/z) / θ(dσ/z) e^{imψ} dψ`.
pub fn integral<T: Real>(c: &Ctx<T>) -> QResult<Vec<C<T>>> {
    let (b, d) = tops(c);
    let s = C::new(sigma(c, &d), T::zero());
    let m = c.int("m");
    let v = c.integral(|z| {
        let num: Vec<_> = b.iter().map(|&x| x * s / z).collect();
        let den: Vec<_> = d.iter().map(|&x| x * s / z).collect();
        Ok(c.th(&num)? / c.th(&den)? * z.powi(m))
    })?;
    Ok(vec![v])
}

#[derive(Clone, Copy)]
enum Form {
    Series,
    Geometric,
    Partial,
}

fn residues<T: Real>(c: &Ctx<T>, form: Form) -> QResult<Vec<C<T>>> {
    let (b, d) = tops(c);
    let s = sigma(c, &d);
    let m = c.int("m");
    let p = (d.len() - b.len()) as i32;
    let qq = c.qq();
    let one = c.k(1.0);
    let qpoch_q = c.poch(&[qq])?;
    let pre = c.two_pi() * s.powi(m) / (qpoch_q * qpoch_q);
    let ratio = c.q.pow(m) * prod(&b) / prod(&d);
    let mut out = Vec::with_capacity(d.len());
    for (k, &dk) in d.iter().enumerate() {
        let rest: Vec<_> = d.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &x)| x / dk).collect();
        let bk: Vec<_> = b.iter().map(|&x| x / dk).collect();
        let head = c.th(&bk)? * dk.powi(m) / c.dth(&rest)?;
        let arg = ratio * (qq * dk).powi(p);
        let series = match form {
            Form::Series => c.phi_on(&c.q, &[qq], &[], p, arg)?,
            Form::Geometric => one / (one - arg),
            Form::Partial => {
                let big = c.q.power_base(p)?;
                let sign = if p % 2 == 1 { one } else { -one };
                c.add_terms(1);
                c.poch_on(&big, &[big.q])? * partial_theta(sign * arg, &big, PartialThetaRep::Sum)?
            }
        };
        out.push(pre * head * series);
    }
    Ok(out)
}

pub fn series<T: Real>(c: &Ctx<T>) -> QResult<Vec<C<T>>> {
    residues(c, Form::Series)
}

pub fn geometric<T: Real>(c: &Ctx<T>) -> QResult<Vec<C<T>>> {
    residues(c, Form::Geometric)
}

pub fn partial<T: Real>(c: &Ctx<T>) -> QResult<Vec<C<T>>> {
    residues(c, Form::Partial)
}

pub fn entries() -> Vec<IdentityDescriptor> {
    const INT: &[ParamRule] = &[
        ParamRule { name: "b1", dist: Dist::Band },
        ParamRule { name: "d1", dist: D },
        ParamRule { name: "d2", dist: D },
        ParamRule { name: "m", dist: M },
    ];
    const SUM: &[ParamRule] = &[
        ParamRule { name: "b1", dist: Dist::Band },
        ParamRule { name: "b2", dist: Dist::Band },
        ParamRule { name: "d1", dist: D },
        ParamRule { name: "d2", dist: D },
        ParamRule { name: "m", dist: M },
    ];
    const PARTIAL: &[ParamRule] = &[
        ParamRule { name: "b1", dist: Dist::Band },
        ParamRule { name: "d1", dist: D },
        ParamRule { name: "d2", dist: D },
        ParamRule { name: "d3", dist: D },
        ParamRule { name: "m", dist: M },
    ];
    let mut out = vec![
        entry("THETA_RATIO_INT", "a ratio of an arbitrary product", Kind::Integral, INT, &["sigma"], false, &[], sides!(integral, series, constraints)),
        entry("THETA_RATIO_SUM", "If $D=B$ then the nonterminating", Kind::Integral, SUM, &["sigma"], false, &[], sides!(integral, geometric, constraints)),
        entry("THETA_RATIO_PARTIAL", "connected to the partial theta function", Kind::Integral, PARTIAL, &["sigma"], false, &[], sides!(integral, partial, constraints)),
    ];
    for e in &mut out {
        e.q_band = Some((0.1, 0.4));
    }
    out
}
