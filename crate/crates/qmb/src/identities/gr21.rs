//! Products and squares of nonterminating well-poised `₂φ₁`: the classical
//! two-term expansions, contour integrals, the six- and five-term forms,
//! and the two Bailey-Daum type summations at `z = -q/b`.

use num_complex::Complex;
use qseries::{QResult, Real};

use super::{entry, sides, Ctx, Dist, IdentityDescriptor, Kind, ParamRule};

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
    sb: C<T>,
    sc: C<T>,
    sz: C<T>,
}

/// For the squares `c` is not bound and stands for `qa/b`.
fn vals<T: Real>(cx: &Ctx<T>) -> P<T> {
    let (q, a, b) = (cx.qq(), cx.p("a"), cx.p("b"));
    let c = if cx.has("c") { cx.p("c") } else { q * a / b };
    let z = if cx.has("z") { cx.p("z") } else { -q / b };
    P { q, a, b, c, z, sq: cx.q.sqrt(), sa: a.sqrt(), sb: b.sqrt(), sc: c.sqrt(), sz: z.sqrt() }
}

pub fn constraints<T: Real>(cx: &Ctx<T>) -> QResult<()> {
    cx.less("|z| < 1", cx.p("z").norm(), T::one())
}

pub fn bd_constraints<T: Real>(cx: &Ctx<T>) -> QResult<()> {
    cx.less("|q| < |b|", cx.q.abs_q(), cx.p("b").norm())
}

pub fn prod_lhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, .. } = vals(cx);
    Ok(vec![cx.phi(&[a, b], &[c], z)? * cx.phi(&[a, q * a / c], &[q * a / b], z)?])
}

pub fn prod_expansion<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa, sb, sc, .. } = vals(cx);
    let r = sa * sc / sb;
    let t1 = cx.ratio(&[a * z, a * b * z / c], &[z, b * z / c])?
        * cx.phi(&[a, c / b, r, -r, sq * r, -sq * r], &[c, a * z, q * a / b, a * c / b, q * c / (b * z)], q)?;
    let s = z * sa * sb / sc;
    let t2 = cx.ratio(&[a, a * z, b * z, c / b, q * a * z / c], &[z, z, c, q * a / b, c / (b * z)])?
        * cx.phi(&[z, a * b * z / c, s, -s, sq * s, -sq * s], &[a * z, b * z, q * a * z / c, a * b * z * z / c, q * b * z / c], q)?;
    Ok(vec![t1, t2])
}

pub fn prod_integral<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa, sb, sc, sz } = vals(cx);
    let h = cx.p("h");
    let aset = [sb * sc * sz, a * sb * sz * sz * sz / sc, q * a * sz / (sb * sc), a * sc * sz / sb];
    let cset = [a * sb * sz / sc, sc * sz / sb, sa * sz, -sa * sz, sq * sa * sz, -sq * sa * sz];
    let d = (sc / (sb * sz), sb * sz / sc);
    let k = cx.poch(&[a, c / b, a * b * z / c])? / (cx.dth(&[h, h * c / (b * z)])? * cx.dpoch(&[z, c, q * a / b])?);
    Ok(vec![k * cx.poch(&[q])? / cx.two_pi() * cx.sym_integral(&aset, &cset, d, h)?])
}

pub fn prod_six<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa, sb, sc, .. } = vals(cx);
    let h = cx.p("h");
    let pre = cx.dth(&[h, h * c / (b * z)])?.inv();
    let s = sa * sb / sc;
    let mut t = vec![
        cx.th(&[h * a, h * c / (a * b * z)])?
            * cx.ratio(&[q / b, c / a, c / b, c / b], &[c, c / (a * b), c / (a * b), q * a / b])?
            * cx.phi(&[a, b, q * a / c, q * b / c, a * b * z / c, q / z], &[q * a * b / c, sq * s, -sq * s, q * s, -q * s], q)?,
        cx.th(&[h * c / b, h / z])?
            * cx.ratio(&[a, a, b, q * a / c, a * b * z / c, a * b * z / c], &[z, z, c, q * a / b, a * b / c, a * b / c])?
            * cx.phi(&[q / a, q / b, c / a, c / b, z, q * c / (a * b * z)], &[q * c / (a * b), sq / s, -sq / s, q / s, -q / s], q)?,
    ];
    let minus1 = -cx.k(1.0);
    for e in [1.0, -1.0] {
        let e = cx.k(e);
        let (acb, bca, abc) = (e * sa * sc / sb, e * sb * sc / sa, e * s);
        t.push(
            cx.th(&[h * acb, h / (z * abc), bca])?
                * cx.ratio(&[a, c / b, a * b * z / c], &[minus1, sq, -sq, z, c, q * a / b, abc.inv(), abc])?
                * cx.phi(&[acb, bca, q / bca, q / acb, z * abc, q / (z * abc)], &[-q, sq, -sq, q * abc, q / abc], q)?,
        );
    }
    for e in [1.0, -1.0] {
        let e = cx.k(e);
        let (acb, bca, abc) = (e * sa * sc / sb, e * sb * sc / sa, e * s);
        t.push(
            cx.th(&[h * sq * acb, h / (z * sq * abc)])?
                * cx.ratio(
                    &[a, c / b, a * b * z / c, acb / sq, bca / sq, sq / bca, z * abc / sq],
                    &[minus1, sq.inv(), -sq.inv(), z, c, q * a / b, sq * acb, (sq * abc).inv(), abc / sq, z * sq * abc],
                )?
                * cx.phi(
                    &[sq * acb, sq * bca, q * sq / bca, q * sq / acb, z * sq * abc, q * sq / (z * abc)],
                    &[-q, q * sq, -q * sq, q * sq * abc, q * sq / abc],
                    q,
                )?,
        );
    }
    Ok(t.into_iter().map(|x| pre * x).collect())
}

pub fn sq_lhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, z, .. } = vals(cx);
    let v = cx.phi(&[a, b], &[q * a / b], z)?;
    Ok(vec![v * v])
}

pub fn sq_expansion<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, z, sq, .. } = vals(cx);
    let bb = b * b;
    let t1 = cx.ratio(&[a * z, bb * z / q], &[z, bb * z / (q * a)])?
        * cx.phi(&[a, q * a / bb, sq * a / b, -sq * a / b, -q * a / b], &[a * z, q * a / b, q * a * a / bb, q * q * a / (bb * z)], q)?;
    let t2 = cx.ratio(&[a, a * z, b * z, b * z, q * a / bb], &[z, z, q * a / b, q * a / b, q * a / (bb * z)])?
        * cx.phi(&[z, -b * z, b * z / sq, -b * z / sq, bb * z / q], &[a * z, b * z, bb * z * z / q, bb * z / a], q)?;
    Ok(vec![t1, t2])
}

pub fn sq_integral<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, z, sq, sa, sz, .. } = vals(cx);
    let h = cx.p("h");
    let bb = b * b;
    let aset = [sq * sa * sz, b * sa * sz * sz * sz / sq, sq * sa * sa * sa * sz / b];
    let cset = [b * sa * sz / sq, sq * sa * sz / b, sa * sz, -sa * sz, -sq * sa * sz];
    let d = (sq * sa / (b * sz), b * sz / (sq * sa));
    let k = cx.poch(&[a, q * a / bb, bb * z / q])?
        / (cx.dth(&[h, h * q * a / (bb * z)])? * cx.dpoch(&[z, q * a / b, q * a / b])?);
    Ok(vec![k * cx.poch(&[q])? / cx.two_pi() * cx.sym_integral(&aset, &cset, d, h)?])
}

pub fn sq_five<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, z, sq, .. } = vals(cx);
    let h = cx.p("h");
    let bb = b * b;
    let one = cx.k(1.0);
    let pre = cx.dth(&[h, h * q * a / (bb * z)])?.inv();
    let mut t = vec![
        cx.th(&[h * a, h * q / (bb * z)])?
            * cx.ratio(&[q / b, q / b, q * a / bb, q * a / bb], &[q * a / b, q * a / b, q / bb, q / bb])?
            * cx.phi(&[a, b, bb / a, bb * z / q, q / z], &[bb, b * sq, -b * sq, -b], q)?,
        cx.th(&[h * q * a / bb, h / z])?
            * cx.ratio(&[a, a, b, b, bb * z / q, bb * z / q], &[z, z, bb / q, bb / q, q * a / b, q * a / b])?
            * cx.phi(&[q / a, q / b, q * a / bb, z, q * q / (bb * z)], &[q * q / bb, q * sq / b, -q * sq / b, -q / b], q)?,
    ];
    for e in [1.0, -1.0] {
        let s = cx.k(e) * sq;
        t.push(
            cx.th(&[h * a * s / b, h * s / (b * z)])?
                * cx.ratio(&[s, a, q * a / bb, bb * z / q], &[-one, -s, z, q * a / b, q * a / b, b / s, s / b])?
                * cx.phi(&[s, a * s / b, b * s / a, b * z / s, q * s / (b * z)], &[-q, -s, b * s, q * s / b], q)?,
        );
    }
    t.push(
        cx.th(&[-h * q * a / b, -h / (b * z)])?
            * cx.ratio(
                &[-one, a, -a / b, q * a / bb, -b * z / q, bb * z / q],
                &[z, -b * z, sq.inv(), -sq.inv(), q * a / b, q * a / b, -q * a / b, -b.inv(), -b / q],
            )?
            * cx.phi(&[-q, -b * z, -q * a / b, -q * b / a, -q * q / (b * z)], &[-q * b, q * sq, -q * sq, -q * q / b], q)?,
    );
    Ok(t.into_iter().map(|x| pre * x).collect())
}

/// Square of the Bailey-Daum closed form.
pub fn bd_closed<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, .. } = vals(cx);
    let q2 = cx.q.power_base(2)?;
    let v = cx.poch(&[-q])? * cx.poch_on(&q2, &[q * a, q * q * a / (b * b)])? / cx.dpoch(&[-q / b, q * a / b])?;
    Ok(vec![v * v])
}

pub fn bd_two<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, sq, .. } = vals(cx);
    let bb = b * b;
    let t1 = cx.ratio(&[-b, -q * a / b], &[-q / b, -b / a])?
        * cx.phi(&[sq * a / b, -sq * a / b, q * a / bb, a], &[q * a / b, -q * a / b, q * a * a / bb], q)?;
    let t2 = cx.ratio(&[-q, -q, a, -q * a / b, q * a / bb], &[q * a / b, q * a / b, -q / b, -q / b, -a / b])?
        * cx.phi(&[sq, -sq, -b, -q / b], &[-q, -q * a / b, -q * b / a], q)?;
    Ok(vec![t1, t2])
}

pub fn bd_four<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, sq, .. } = vals(cx);
    let h = cx.p("h");
    let bb = b * b;
    let one = cx.k(1.0);
    let pre = cx.dth(&[h, -h * a / b])?.inv();
    let mut t = vec![
        cx.th(&[h * a, -h / b])?
            * cx.ratio(&[q / b, q / b, q * a / bb, q * a / bb], &[q * a / b, q * a / b, q / bb, q / bb])?
            * cx.phi(&[a, b, -b, bb / a], &[bb, b * sq, -b * sq], q)?,
        cx.th(&[h * q * a / bb, -h * b / q])?
            * cx.ratio(&[a, a, b, -b, b, -b], &[-q / b, -q / b, bb / q, bb / q, q * a / b, q * a / b])?
            * cx.phi(&[q * a / bb, q / b, -q / b, q / a], &[q * q / bb, q * sq / b, -q * sq / b], q)?,
    ];
    for e in [1.0, -1.0] {
        let s = cx.k(e) * sq;
        t.push(
            cx.th(&[h * a * s / b, -h / s])?
                * cx.ratio(&[s, a, -b, q * a / bb], &[-one, -s, -q / b, q * a / b, q * a / b, b / s, s / b])?
                * cx.phi(&[a * s / b, b * s / a, sq, -sq], &[-q, b * s, q * s / b], q)?,
        );
    }
    Ok(t.into_iter().map(|x| pre * x).collect())
}

pub fn entries() -> Vec<IdentityDescriptor> {
    const PROD: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
    ];
    const PROD_H: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "c", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
        ParamRule { name: "h", dist: Dist::Unit },
    ];
    const SQ: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
    ];
    const SQ_H: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
        ParamRule { name: "h", dist: Dist::Unit },
    ];
    const BD: &[ParamRule] = &[ParamRule { name: "a", dist: Dist::Band }, ParamRule { name: "b", dist: Dist::Band }];
    const BD_H: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "h", dist: Dist::Unit },
    ];
    let bd = "Bailey-Daum $q$-Kummer sum in the specialization";
    vec![
        entry("GR_PROD_EXPANSION", "which can be found in Gasper \\& Rahman, namely", Kind::Sum, PROD, &[], true, &[], sides!(prod_lhs, prod_expansion, constraints)),
        entry("PROD21_INT", "product of two nonterminating", Kind::Integral, PROD_H, &["h", "sigma"], true, &[], sides!(prod_lhs, prod_integral, constraints)),
        entry("PROD21_SIX", "six-term representation for a", Kind::Sum, PROD_H, &["h"], true, &[], sides!(prod_lhs, prod_six, constraints)),
        entry("GR_SQ_EXPANSION", "using the substitution $c=qa/b$", Kind::Sum, SQ, &[], true, &[], sides!(sq_lhs, sq_expansion, constraints)),
        entry("SQ21_INT", "square of a nonterminating well-poised", Kind::Integral, SQ_H, &["h", "sigma"], true, &[], sides!(sq_lhs, sq_integral, constraints)),
        entry("SQ21_FIVE", "five-term representation for a", Kind::Sum, SQ_H, &["h"], true, &[], sides!(sq_lhs, sq_five, constraints)),
        entry("BD_SQ_A", bd, Kind::Sum, BD, &[], true, &[], sides!(bd_closed, bd_two, bd_constraints)),
        entry("BD_SQ_B", bd, Kind::Sum, BD_H, &["h"], true, &[], sides!(bd_closed, bd_four, bd_constraints)),
    ]
}
