//! Nonterminating very-well-poised `₈W₇`: Bailey's two-term form, contour
//! integral, four-term form, the two three-term forms, and Watson's
//! terminating reduction.

use num_complex::Complex;
use qseries::{qpoch, QResult, Real};

use super::{entry, sides, Ctx, Dist, IdentityDescriptor, Kill, Kind, ParamRule};

type C<T> = Complex<T>;
type Terms<T> = QResult<Vec<C<T>>>;

struct P<T: Real> {
    q: C<T>,
    a: C<T>,
    b: C<T>,
    c: C<T>,
    d: C<T>,
    e: C<T>,
    f: C<T>,
    sq: C<T>,
    sa: C<T>,
}

/// `f` is `q^{-n}` when it is not bound (the terminating case).
fn vals<T: Real>(cx: &Ctx<T>) -> P<T> {
    let a = cx.p("a");
    let f = if cx.has("f") { cx.p("f") } else { cx.q.pow(-cx.int("n")) };
    P { q: cx.qq(), a, b: cx.p("b"), c: cx.p("c"), d: cx.p("d"), e: cx.p("e"), f, sq: cx.q.sqrt(), sa: a.sqrt() }
}

pub fn constraints<T: Real>(cx: &Ctx<T>) -> QResult<()> {
    let P { q, a, b, c, d, e, f, .. } = vals(cx);
    cx.less("|q²a²| < |bcdef|", (q * q * a * a).norm(), (b * c * d * e * f).norm())
}

pub fn lhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, d, e, f, sa, .. } = vals(cx);
    Ok(vec![cx.w(a, sa, &[b, c, d, e, f], q * q * a * a / (b * c * d * e * f))?])
}

pub fn sum2<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, d, e, f, .. } = vals(cx);
    let qa = q * a;
    let t1 = cx.ratio(&[qa / (d * e), qa / (d * f), qa / (e * f), qa], &[qa / (d * e * f), qa / d, qa / e, qa / f])?
        * cx.phi(&[qa / (b * c), d, e, f], &[qa / b, qa / c, d * e * f / a], q)?;
    let x = q * q * a * a / (b * c * d * e * f);
    let t2 = cx.ratio(&[x * c, x * b, qa / (b * c), qa, d, e, f], &[x, d * e * f / qa, qa / b, qa / c, qa / d, qa / e, qa / f])?
        * cx.phi(&[x, qa / (d * e), qa / (d * f), qa / (e * f)], &[x * c, x * b, q * qa / (d * e * f)], q)?;
    Ok(vec![t1, t2])
}

pub fn integral<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, d, e, f, sq, sa } = vals(cx);
    let h = cx.p("h");
    let (sd, se, sf) = (d.sqrt(), e.sqrt(), f.sqrt());
    let r = sd * se * sf / (sq * sa);
    let qa32 = q * sq * a * sa;
    let s3 = sd * se * sf;
    let aset = [qa32 / (b * s3), qa32 / (c * s3)];
    let cset = [sq * sa * sd / (se * sf), sq * sa * se / (sd * sf), sq * sa * sf / (sd * se), qa32 / (b * c * s3)];
    let qa = q * a;
    let k = cx.poch(&[qa, qa / (b * c), qa / (d * e), qa / (d * f), qa / (e * f), d, e, f])?
        / (cx.dth(&[h, h * d * e * f / qa])? * cx.dpoch(&[qa / b, qa / c, qa / d, qa / e, qa / f])?);
    Ok(vec![k * cx.poch(&[q])? / cx.two_pi() * cx.sym_integral(&aset, &cset, (r, r.inv()), h)?])
}

/// One of the three balanced `₄φ₃` terms, without its theta factor.
fn xyz_term<T: Real>(cx: &Ctx<T>, x: C<T>, y: C<T>, z: C<T>) -> QResult<C<T>> {
    let P { q, a, b, c, .. } = vals(cx);
    let qa = q * a;
    Ok(cx.ratio(&[qa / (b * x), qa / (c * x), qa / (x * y), qa / (x * z), y, z], &[qa / (b * c * x), y / x, z / x])?
        * cx.phi(&[qa / (y * z), b * x / a, c * x / a, x], &[b * c * x / a, q * x / y, q * x / z], q)?)
}

pub fn four<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, d, e, f, .. } = vals(cx);
    let h = cx.p("h");
    let qa = q * a;
    let pre = cx.poch(&[qa])? / (cx.dth(&[h, h * d * e * f / qa])? * cx.dpoch(&[qa / b, qa / c, qa / d, qa / e, qa / f])?);
    let x = q * q * a * a / (b * c * d * e * f);
    let t0 = cx.th(&[h * qa / (b * c), h / x])?
        * cx.ratio(&[qa / (d * e), qa / (d * f), qa / (e * f), b, c, d, e, f], &[x, b * c * d / qa, b * c * e / qa, b * c * f / qa])?
        * cx.phi(&[x, qa / (b * c), q / b, q / c], &[q * qa / (b * c * d), q * qa / (b * c * e), q * qa / (b * c * f)], q)?;
    let mut out = vec![pre * t0];
    for (u, v, w) in [(f, d, e), (d, e, f), (e, d, f)] {
        out.push(pre * cx.th(&[h * u, h * v * w / qa])? * cx.poch(&[qa / (b * c)])? * xyz_term(cx, u, v, w)?);
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Which {
    A,
    B,
}

fn three<T: Real>(cx: &Ctx<T>, which: Which) -> Terms<T> {
    let P { q, a, b, c, d, e, f, .. } = vals(cx);
    let qa = q * a;
    let n = cx.int("n");
    let qp = |k: i32| cx.q.pow(n + k);
    let th0 = match which {
        Which::A => cx.dth(&[qp(-1) * b * c / a, qp(-2) * b * c * d * e * f / (a * a)])?,
        Which::B => cx.dth(&[qp(2) * a * a / (b * c * d * e * f), qp(1) * a / (b * c)])?,
    };
    let pre = cx.poch(&[qa, qa / (b * c)])? / (th0 * cx.dpoch(&[qa / b, qa / c, qa / d, qa / e, qa / f])?);
    let mut out = Vec::new();
    for (x, y, z) in [(d, e, f), (e, d, f), (f, d, e)] {
        let th = match which {
            Which::A => cx.th(&[qp(-1) * b * c * x / a, qp(-2) * b * c * y * z / (a * a)])?,
            Which::B => cx.th(&[qp(2) * a * a / (b * c * y * z), qp(1) * a / (b * c * x)])?,
        };
        out.push(pre * th * xyz_term(cx, x, y, z)?);
    }
    Ok(out)
}

pub fn three_a<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    three(cx, Which::A)
}

pub fn three_b<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    three(cx, Which::B)
}

/// Watson's terminating form with `f = q^{-n}`.
pub fn watson<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, d, e, .. } = vals(cx);
    let n = cx.int("n");
    if n < 0 {
        return Err(qseries::QError::DomainError("Watson's form needs n >= 0".into()));
    }
    let qa = q * a;
    let qs = &cx.q;
    let nu = n as usize;
    let pre = qpoch(qa, qs, nu) * qpoch(qa / (d * e), qs, nu) / (qpoch(qa / d, qs, nu) * qpoch(qa / e, qs, nu));
    let qmn = cx.q.pow(-n);
    Ok(vec![pre * cx.phi(&[qmn, d, e, qa / (b * c)], &[qa / b, qa / c, d * e * qmn / a], q)?])
}

pub fn no_constraints<T: Real>(_: &Ctx<T>) -> QResult<()> {
    Ok(())
}

fn h_three_a(cx: &Ctx<f64>, n: i32) -> C<f64> {
    cx.q.pow(n - 1) * cx.p("b") * cx.p("c") / cx.p("a")
}

fn h_three_b(cx: &Ctx<f64>, n: i32) -> C<f64> {
    let a = cx.p("a");
    cx.q.pow(n + 2) * a * a / (cx.p("b") * cx.p("c") * cx.p("d") * cx.p("e") * cx.p("f"))
}

pub fn entries() -> Vec<IdentityDescriptor> {
    const BASE: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "d", dist: Dist::Band },
        ParamRule { name: "e", dist: Dist::Band },
        ParamRule { name: "f", dist: Dist::Band },
    ];
    const WITH_H: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "d", dist: Dist::Band },
        ParamRule { name: "e", dist: Dist::Band },
        ParamRule { name: "f", dist: Dist::Band },
        ParamRule { name: "h", dist: Dist::Unit },
    ];
    const WITH_N: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "d", dist: Dist::Band },
        ParamRule { name: "e", dist: Dist::Band },
        ParamRule { name: "f", dist: Dist::Band },
        ParamRule { name: "n", dist: Dist::Choice(&[-1, 0, 1, 2]) },
    ];
    const WATSON: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "d", dist: Dist::Band },
        ParamRule { name: "e", dist: Dist::Band },
        ParamRule { name: "n", dist: Dist::Choice(&[0, 1, 2, 3]) },
    ];
    const KILLS: &[Kill] = &[
        Kill { target: "VWP87_THREE_A", term: Some(0), h: h_three_a },
        Kill { target: "VWP87_THREE_B", term: Some(0), h: h_three_b },
    ];
    vec![
        entry("VWP87_SUM2", "${}_4\\phi_3$'s as a representation of a nonterminating very-well-poised ${}_8W_7$", Kind::Sum, BASE, &[], true, &[], sides!(lhs, sum2, constraints)),
        entry("VWP87_INT", "integral representation for the nonterminating very-well-poised ${}_8W_7$.", Kind::Integral, WITH_H, &["h", "sigma"], true, &[], sides!(lhs, integral, constraints)),
        entry("VWP87_FOUR", "a sum of four balanced", Kind::Sum, WITH_H, &["h"], true, KILLS, sides!(lhs, four, constraints)),
        entry("VWP87_THREE_A", "sum of three nonterminating balanced", Kind::Sum, WITH_N, &[], true, &[], sides!(lhs, three_a, constraints)),
        entry("VWP87_THREE_B", "Alternatively one could have chosen $h=q^2a^2/(bcdef)$", Kind::Sum, WITH_N, &[], true, &[], sides!(lhs, three_b, constraints)),
        entry("WATSON_LIMIT", "Watson's $q$-analogue of Whipple's", Kind::Sum, WATSON, &[], true, &[], sides!(lhs, watson, no_constraints)),
    ]
}
