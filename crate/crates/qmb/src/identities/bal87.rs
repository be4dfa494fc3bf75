//! Balanced `₈W₇` at argument `q`: a contour integral with a closed-form
//! value, the six-term summation, and its null and five-term
//! specializations in the free theta parameter.

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
    d: C<T>,
    e: C<T>,
    sa: C<T>,
    sb: C<T>,
}

fn vals<T: Real>(cx: &Ctx<T>) -> P<T> {
    let (a, b) = (cx.p("a"), cx.p("b"));
    P { q: cx.qq(), a, b, c: cx.p("c"), d: cx.p("d"), e: cx.p("e"), sa: a.sqrt(), sb: b.sqrt() }
}

pub fn constraints<T: Real>(_: &Ctx<T>) -> QResult<()> {
    Ok(())
}

pub fn integral<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, d, e, sa, sb } = vals(cx);
    let h = cx.p("h");
    let r = sb / sa;
    let aset = [sb, -sb, q * sa * sb / c, q * sa * sb / d, q * sa * sb / e, r * r * r * c * d * e];
    let cset = [sa * sb, q * sb, -q * sb, sb * sb * sb / sa, c * r, d * r, e * r, q * sa * sa * sa / (c * d * e * sb)];
    let _ = (a, b);
    Ok(vec![cx.sym_integral(&aset, &cset, (r.inv(), r), h)?])
}

pub fn closed_int<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, d, e, .. } = vals(cx);
    let h = cx.p("h");
    let qa = q * a;
    let num = cx.th(&[h, h * a / b])?
        * cx.poch(&[qa / c, qa / (c * d), qa / (c * e), qa / (d * e), b * c * d / a, b * c * e / a, b * d * e / a])?;
    let den = cx.dpoch(&[q, qa / c, b * c / a, b * d / a, b * e / a, b, c, d, e, qa / (c * d * e), qa * a / (b * c * d * e)])?;
    Ok(vec![cx.two_pi() * num / den])
}

/// The theta-free right side of the six-term summation at `h`.
fn product<T: Real>(cx: &Ctx<T>, h: C<T>) -> QResult<C<T>> {
    let P { q, a, b, c, d, e, .. } = vals(cx);
    let qa = q * a;
    Ok(cx.th(&[h, h * a / b])?
        * cx.ratio(
            &[qa / (c * d), qa / (c * e), qa / (d * e), b * c * d / a, b * c * e / a, b * d * e / a],
            &[b, c, d, e, b * c / a, b * d / a, b * e / a, qa / (c * d * e), qa * a / (b * c * d * e)],
        )?)
}

/// The six summands as `(u, v, coefficient)`; the summand at `h` is
/// `θ(hu, hv) · coefficient`.
fn pieces<T: Real>(cx: &Ctx<T>) -> QResult<Vec<(C<T>, C<T>, C<T>)>> {
    let P { q, a, b, c, d, e, sa, .. } = vals(cx);
    let bb = b * c * d * e;
    let qa = q * a;
    let mut out = Vec::with_capacity(6);
    let co = cx.ratio(
        &[sa.inv(), -sa.inv(), q / c, q / d, q / e, bb / (a * a)],
        &[q / sa, -q / sa, a, b, b / a, c / a, d / a, e / a, qa / bb],
    )? * cx.w(a, sa, &[b, c, d, e, qa * a / bb], q)?;
    out.push((a, b.inv(), co));
    let a32 = sa * sa * sa;
    let big = q * q * a * a * a / (bb * bb);
    let co = cx.ratio(
        &[bb / (q * a32), -bb / (q * a32), b * c * d / a, b * c * e / a, b * d * e / a, bb * bb / (q * a * a * a)],
        &[
            bb / a32,
            -bb / a32,
            qa * a / bb,
            qa / (c * d * e),
            bb / qa,
            b * bb / (qa * a),
            c * bb / (qa * a),
            d * bb / (qa * a),
            e * bb / (qa * a),
        ],
    )? * cx.w(big, q * a32 / bb, &[qa * a / bb, qa / (b * c * d), qa / (b * c * e), qa / (b * d * e), qa / (c * d * e)], q)?;
    out.push((qa * a / bb, c * d * e / qa, co));
    let all = [b, c, d, e];
    for (i, &x) in all.iter().enumerate() {
        let others: Vec<_> = all.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &y)| y).collect();
        let mut den = vec![q * sa / x, -q * sa / x, x, b * x / a, a / x];
        den.extend(others.iter().map(|&y| y / x));
        den.push(qa * a / (x * bb));
        let mut tail = vec![x];
        tail.extend(others.iter().map(|&y| x * y / a));
        tail.push(qa * x / bb);
        let co = cx.ratio(&[sa / x, -sa / x, qa / (x * c), qa / (x * d), qa / (x * e), bb / (a * x)], &den)?
            * cx.w(x * x / a, x / sa, &tail, q)?;
        out.push((x, a / (b * x), co));
    }
    Ok(out)
}

fn six_at<T: Real>(cx: &Ctx<T>, h: C<T>) -> Terms<T> {
    pieces(cx)?.into_iter().map(|(u, v, co)| Ok(cx.th(&[h * u, h * v])? * co)).collect()
}

pub fn six_lhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    Ok(vec![product(cx, cx.p("h"))?])
}

pub fn six<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    six_at(cx, cx.p("h"))
}

/// The killing values of `h`, in the order NULL_A, NULL_B, FIVE_A..FIVE_D.
fn special_h<T: Real>(cx: &Ctx<T>, which: usize, n: i32) -> C<T> {
    let P { q, a, b, c, d, e, .. } = vals(cx);
    let qn = cx.q.pow(n);
    match which {
        0 => qn,
        1 => qn * b / a,
        2 => qn / a,
        3 => qn * b,
        4 => qn / q * b * c * d * e / (a * a),
        _ => qn * q * a / (c * d * e),
    }
}

fn null<T: Real>(cx: &Ctx<T>, which: usize) -> (Terms<T>, Terms<T>) {
    let h = special_h(cx, which, cx.int("n"));
    match six_at(cx, h) {
        Ok(t) => (Ok(vec![t[0]]), Ok(t[1..].iter().map(|&x| -x).collect())),
        Err(e) => (Err(e.clone()), Err(e)),
    }
}

pub fn null_a_lhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    null(cx, 0).0
}

pub fn null_a_rhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    null(cx, 0).1
}

pub fn null_b_lhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    null(cx, 1).0
}

pub fn null_b_rhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    null(cx, 1).1
}

fn five_lhs<T: Real>(cx: &Ctx<T>, which: usize) -> Terms<T> {
    Ok(vec![product(cx, special_h(cx, which, cx.int("n")))?])
}

/// The five surviving summands; the dropped one vanishes at this `h`.
fn five_rhs<T: Real>(cx: &Ctx<T>, which: usize) -> Terms<T> {
    let drop = if which < 4 { 0 } else { 1 };
    let t = six_at(cx, special_h(cx, which, cx.int("n")))?;
    Ok(t.into_iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, x)| x).collect())
}

macro_rules! five_pair {
    ($l:ident, $r:ident, $w:expr) => {
        pub fn $l<T: Real>(cx: &Ctx<T>) -> Terms<T> {
            five_lhs(cx, $w)
        }
        pub fn $r<T: Real>(cx: &Ctx<T>) -> Terms<T> {
            five_rhs(cx, $w)
        }
    };
}

five_pair!(five_a_lhs, five_a_rhs, 2);
five_pair!(five_b_lhs, five_b_rhs, 3);
five_pair!(five_c_lhs, five_c_rhs, 4);
five_pair!(five_d_lhs, five_d_rhs, 5);

fn h0(cx: &Ctx<f64>, n: i32) -> C<f64> {
    special_h(cx, 0, n)
}
fn h1(cx: &Ctx<f64>, n: i32) -> C<f64> {
    special_h(cx, 1, n)
}
fn h2(cx: &Ctx<f64>, n: i32) -> C<f64> {
    special_h(cx, 2, n)
}
fn h3(cx: &Ctx<f64>, n: i32) -> C<f64> {
    special_h(cx, 3, n)
}
fn h4(cx: &Ctx<f64>, n: i32) -> C<f64> {
    special_h(cx, 4, n)
}
fn h5(cx: &Ctx<f64>, n: i32) -> C<f64> {
    special_h(cx, 5, n)
}

pub fn entries() -> Vec<IdentityDescriptor> {
    const WITH_H: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "d", dist: Dist::Band },
        ParamRule { name: "e", dist: Dist::Band },
        ParamRule { name: "h", dist: Dist::Unit },
    ];
    const WITH_N: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "d", dist: Dist::Band },
        ParamRule { name: "e", dist: Dist::Band },
        ParamRule { name: "n", dist: Dist::Choice(&[-1, 0, 1, 2]) },
    ];
    const KILLS: &[Kill] = &[
        Kill { target: "BAL87_NULL_A", term: None, h: h0 },
        Kill { target: "BAL87_NULL_B", term: None, h: h1 },
        Kill { target: "BAL87_FIVE_A", term: Some(0), h: h2 },
        Kill { target: "BAL87_FIVE_B", term: Some(0), h: h3 },
        Kill { target: "BAL87_FIVE_C", term: Some(1), h: h4 },
        Kill { target: "BAL87_FIVE_D", term: Some(1), h: h5 },
    ];
    let five = "five-term summation formulas";
    vec![
        entry("BAL87_INT", "By starting with Bailey's three-term transformation formula", Kind::Integral, WITH_H, &["h", "sigma"], false, &[], sides!(integral, closed_int, constraints)),
        entry("BAL87_SIX", "six-term summation formulas for nonterminating", Kind::Sum, WITH_H, &["h"], false, KILLS, sides!(six_lhs, six, constraints)),
        entry("BAL87_NULL_A", "six-term transformation formulas", Kind::Sum, WITH_N, &[], true, &[], sides!(null_a_lhs, null_a_rhs, constraints)),
        entry("BAL87_NULL_B", "Taking $h=q^n$", Kind::Sum, WITH_N, &[], true, &[], sides!(null_b_lhs, null_b_rhs, constraints)),
        entry("BAL87_FIVE_A", five, Kind::Sum, WITH_N, &[], true, &[], sides!(five_a_lhs, five_a_rhs, constraints)),
        entry("BAL87_FIVE_B", five, Kind::Sum, WITH_N, &[], true, &[], sides!(five_b_lhs, five_b_rhs, constraints)),
        entry("BAL87_FIVE_C", five, Kind::Sum, WITH_N, &[], true, &[], sides!(five_c_lhs, five_c_rhs, constraints)),
        entry("BAL87_FIVE_D", five, Kind::Sum, WITH_N, &[], true, &[], sides!(five_d_lhs, five_d_rhs, constraints)),
    ]
}
