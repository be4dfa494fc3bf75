//! Nonterminating very-well-poised `₅W₄`: two-term expansion, contour
//! integral, five-term form and its two four-term specializations.

use num_complex::Complex;
use qseries::{QResult, Real};

use super::{entry, sides, Ctx, Dist, IdentityDescriptor, Kill, Kind, ParamRule};

type C<T> = Complex<T>;
type Terms<T> = QResult<Vec<C<T>>>;

struct P<T: Real> {
    q: C<T>,
    a: C<T>,
    b: C<T>,
    c: C<T>,
    z: C<T>,
    sq: C<T>,
    sa: C<T>,
}

fn vals<T: Real>(cx: &Ctx<T>) -> P<T> {
    let a = cx.p("a");
    P { q: cx.qq(), a, b: cx.p("b"), c: cx.p("c"), z: cx.p("z"), sq: cx.q.sqrt(), sa: a.sqrt() }
}

pub fn constraints<T: Real>(cx: &Ctx<T>) -> QResult<()> {
    cx.less("|z| < 1", cx.p("z").norm(), T::one())
}

pub fn lhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { a, b, c, z, sa, .. } = vals(cx);
    Ok(vec![cx.w(a, sa, &[b, c], z)?])
}

pub fn sum2<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa } = vals(cx);
    let rqa = sq * sa;
    let bb = b * c * z;
    let t1 = cx.ratio(&[bb * bb / (q * a), q * bb], &[bb * bb / a, bb / (q * a)])?
        * cx.phi(&[rqa, -rqa, q * sa, -q * sa, q * a / (b * c)], &[q * a / b, q * a / c, q * bb, q * q * a / bb], q)?;
    let t2 = cx.ratio(&[q * a, b * z, c * z, q * a / (b * c)], &[q * a / b, q * a / c, z, q * a / bb])?
        * cx.phi(&[bb / rqa, -bb / rqa, bb / sa, -bb / sa, z], &[b * z, c * z, bb * bb / a, bb / a], q)?;
    Ok(vec![t1, t2])
}

/// Prefactor shared by the integral and the five-term form.
fn k_factor<T: Real>(cx: &Ctx<T>, h: C<T>) -> QResult<C<T>> {
    let P { q, a, b, c, z, .. } = vals(cx);
    let bb = b * c * z;
    Ok(cx.poch(&[q * a, q * a / (b * c), bb * bb / (q * a)])?
        / (cx.dth(&[h, h * q * a / bb])? * cx.dpoch(&[q * a / b, q * a / c, bb * bb / a])?))
}

pub fn integral<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, b, c, z, sq, sa, .. } = vals(cx);
    let h = cx.p("h");
    let s = b.sqrt() * c.sqrt() * z.sqrt();
    let aset = [sq * sa * s / c, sq * sa * s / b, sq * s * s * s / sa];
    let cset = [s, -s, sq * s, -sq * s, sq * sa * s / (b * c)];
    let d = (sq * sa / s, s / (sq * sa));
    let pre = k_factor(cx, h)? * cx.poch(&[q])? / cx.two_pi();
    Ok(vec![pre * cx.sym_integral(&aset, &cset, d, h)?])
}

/// The `±√(qa)` series with its products.
fn rqa_term<T: Real>(cx: &Ctx<T>, s: f64) -> QResult<C<T>> {
    let P { q, b, c, z, sq, sa, .. } = vals(cx);
    let bb = b * c * z;
    let ra = sa * cx.k(s);
    let r = sq * ra;
    Ok(cx.ratio(&[r / b, r / c, bb * sq / ra], &[r, r / (b * c), bb / r])?
        * cx.phi(&[r, q * b / r, q * c / r, bb / r, r / bb], &[-q, sq, -sq, sq * b * c / ra], q)?)
}

/// The `±√a` series with its products.
fn ra_term<T: Real>(cx: &Ctx<T>, s: f64) -> QResult<C<T>> {
    let P { q, b, c, z, sq, sa, .. } = vals(cx);
    let bb = b * c * z;
    let ra = sa * cx.k(s);
    Ok(cx.ratio(&[ra / b, ra / c, bb / ra], &[q * ra, ra / (b * c), bb / ra])?
        * cx.phi(&[q * ra, q * b / ra, q * c / ra, bb / ra, q * ra / bb], &[-q, q * sq, -q * sq, q * b * c / ra], q)?)
}

pub fn five<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa } = vals(cx);
    let h = cx.p("h");
    let bb = b * c * z;
    let pre = k_factor(cx, h)?;
    let mut out = Vec::new();
    for s in [1.0, -1.0] {
        let r = sq * sa * cx.k(s);
        out.push(pre * cx.th(&[h * r, h * r / bb])? / cx.dpoch(&[cx.k(-1.0), sq, -sq])? * rqa_term(cx, s)?);
    }
    for s in [1.0, -1.0] {
        let ra = sa * cx.k(s);
        out.push(pre * cx.th(&[h * q * ra, h * ra / bb])? / cx.dpoch(&[cx.k(-1.0), sq.inv(), -sq.inv()])? * ra_term(cx, s)?);
    }
    out.push(
        pre * cx.th(&[h / z, h * q * a / (b * c)])?
            * cx.ratio(&[b, c, b * b * c * c * z / a], &[z, q * a / (b * c), b * b * c * c / (q * a)])?
            * cx.phi(
                &[q / b, q / c, q * a / (b * c), z, q * a / (b * b * c * c * z)],
                &[q * sa / (b * c), -q * sa / (b * c), q * sq * sa / (b * c), -q * sq * sa / (b * c)],
                q,
            )?,
    );
    Ok(out)
}

#[derive(Clone, Copy)]
enum Which {
    A,
    B,
}

fn four<T: Real>(cx: &Ctx<T>, which: Which) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa } = vals(cx);
    let bb = b * c * z;
    let qn = cx.q.pow(cx.int("n"));
    let th0 = match which {
        Which::A => cx.dth(&[qn * z, qn * q * a / (b * c)])?,
        Which::B => cx.dth(&[qn * b * c / (q * a), qn / z])?,
    };
    let pre = cx.poch(&[q * a, bb * bb / (q * a), q * a / (b * c)])?
        / (cx.k(2.0) * th0 * cx.dpoch(&[-q, bb * bb / a, q * a / b, q * a / c])?);
    let mut out = Vec::new();
    for s in [1.0, -1.0] {
        let e = cx.k(s);
        let th = match which {
            Which::A => cx.th(&[e * qn * sq * z * sa, e * qn * sq * sa / (b * c)])?,
            Which::B => cx.th(&[e * qn / sq * b * c / sa, e * qn / sq / (sa * z)])?,
        };
        out.push(pre * th / cx.dpoch(&[sq, -sq])? * rqa_term(cx, s)?);
    }
    for s in [-1.0, 1.0] {
        let e = cx.k(s);
        let th = match which {
            Which::A => cx.th(&[e * qn * q * z * sa, e * qn * sa / (b * c)])?,
            Which::B => cx.th(&[e * qn * b * c / sa, e * qn / q / (sa * z)])?,
        };
        out.push(pre * th / cx.dpoch(&[sq.inv(), -sq.inv()])? * ra_term(cx, s)?);
    }
    Ok(out)
}

pub fn four_a<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    four(cx, Which::A)
}

pub fn four_b<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    four(cx, Which::B)
}

fn h_qn_z(cx: &Ctx<f64>, n: i32) -> C<f64> {
    cx.q.pow(n) * cx.p("z")
}

fn h_qn1_bc_a(cx: &Ctx<f64>, n: i32) -> C<f64> {
    cx.q.pow(n - 1) * cx.p("b") * cx.p("c") / cx.p("a")
}

pub fn entries() -> Vec<IdentityDescriptor> {
    const BASE: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
    ];
    const WITH_H: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
        ParamRule { name: "h", dist: Dist::Unit },
    ];
    const WITH_N: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
        ParamRule { name: "n", dist: Dist::Choice(&[-1, 0, 1, 2]) },
    ];
    const KILLS: &[Kill] = &[
        Kill { target: "VWP54_FOUR_A", term: Some(4), h: h_qn_z },
        Kill { target: "VWP54_FOUR_B", term: Some(4), h: h_qn1_bc_a },
    ];
    vec![
        entry("VWP54_SUM2", "of a very-well-poised ${}_5W_4$ in terms", Kind::Sum, BASE, &[], true, &[], sides!(lhs, sum2, constraints)),
        entry("VWP54_INT", "we present a $q$-Mellin--Barnes integral for a", Kind::Integral, WITH_H, &["h", "sigma"], true, &[], sides!(lhs, integral, constraints)),
        entry("VWP54_FIVE", "Since $C=5$, we generate a five-term transformation", Kind::Sum, WITH_H, &["h"], true, KILLS, sides!(lhs, five, constraints)),
        entry("VWP54_FOUR_A", "four-term transformations", Kind::Sum, WITH_N, &[], true, &[], sides!(lhs, four_a, constraints)),
        entry("VWP54_FOUR_B", "a naturally symmetric four-term transformation", Kind::Sum, WITH_N, &[], true, &[], sides!(lhs, four_b, constraints)),
    ]
}
