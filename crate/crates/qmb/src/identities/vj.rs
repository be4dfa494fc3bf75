//! Very-well-poised `₁₂W₁₁` on base `q³` and `₁₀W₉` on base `q²`: the
//! two-term balanced expansions, contour integrals, and the six- and
//! five-term forms.

use num_complex::Complex;
use qseries::{QResult, Real};

use super::{entry, sides, Ctx, Dist, IdentityDescriptor, Kind, ParamRule};

type C<T> = Complex<T>;
type Terms<T> = QResult<Vec<C<T>>>;

struct P<T: Real> {
    q: C<T>,
    a: C<T>,
    x: C<T>,
    y: C<T>,
    z: C<T>,
    sq: C<T>,
    s: C<T>,
}

fn vals<T: Real>(cx: &Ctx<T>) -> P<T> {
    let (x, y, z) = (cx.p("x"), cx.p("y"), cx.p("z"));
    P { q: cx.qq(), a: cx.p("a"), x, y, z, sq: cx.q.sqrt(), s: x.sqrt() * y.sqrt() * z.sqrt() }
}

fn omega<T: Real>() -> C<T> {
    let half = T::one() / T::lit(2.0);
    C::new(-half, T::lit(3.0).sqrt() * half)
}

/// `{t, ωt, ω²t}`.
fn om<T: Real>(t: C<T>) -> [C<T>; 3] {
    let w = omega::<T>();
    [t, w * t, w * w * t]
}

/// Principal sixth root of `a`.
fn a6<T: Real>(a: C<T>) -> C<T> {
    a.powf(T::one() / T::lit(6.0))
}

fn rotations<T: Real>(x: C<T>, y: C<T>, z: C<T>) -> [(C<T>, C<T>, C<T>); 3] {
    [(x, y, z), (y, x, z), (z, x, y)]
}

pub fn w12_constraints<T: Real>(cx: &Ctx<T>) -> QResult<()> {
    let P { q, a, x, y, z, .. } = vals(cx);
    let xx = x * y * z;
    cx.less("|q³a⁴/(xyz)³| < 1", (q * q * q * a * a * a * a / (xx * xx * xx)).norm(), T::one())
}

pub fn w12<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, x, y, z, .. } = vals(cx);
    let q3 = cx.q.power_base(3)?;
    let r = a6(a);
    let xx = x * y * z;
    let tail = [x, q * x, q * q * x, y, q * y, q * q * y, z, q * z, q * q * z];
    Ok(vec![cx.w_on(&q3, a, r * r * r, &tail, q * q * q * a * a * a * a / (xx * xx * xx))?])
}

pub fn w12_two<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, x, y, z, sq, .. } = vals(cx);
    let q3 = cx.q.power_base(3)?;
    let r = a6(a);
    let (sa, a13) = (r * r * r, r * r);
    let xx = x * y * z;
    let qa = q * a;
    let mut num = vec![x, y, z];
    num.extend(om(a13));
    let t1 = cx.ratio(&[qa, qa / (x * y), qa / (x * z), qa / (y * z)], &[qa / x, qa / y, qa / z, qa / xx])?
        * cx.phi(&num, &[xx / a, sa, -sa, sq * sa, -sq * sa], q)?;
    let mut num = vec![qa / (x * y), qa / (x * z), qa / (y * z)];
    num.extend(om(q * r.powi(8) / xx));
    let u = q * sa * sa * sa / xx;
    let t2 = cx.ratio(&[x, y, z, q * q * a * a * a / (xx * xx)], &[qa / x, qa / y, qa / z, xx / qa])?
        * cx.poch_on(&q3, &[q * q * qa])?
        / cx.dpoch_on(&q3, &[q * q * q * a * a * a * a / (xx * xx * xx)])?
        * cx.phi(&num, &[q * qa / xx, u, -u, sq * u, -sq * u], q)?;
    Ok(vec![t1, t2])
}

/// Prefactor shared by the `₁₂W₁₁` integral and six-term form.
fn w12_k<T: Real>(cx: &Ctx<T>, h: C<T>) -> QResult<C<T>> {
    let P { q, a, x, y, z, .. } = vals(cx);
    let r = a6(a);
    let qa = q * a;
    let mut num = vec![qa, qa / (x * y), qa / (x * z), qa / (y * z), x, y, z];
    num.extend(om(r * r));
    Ok(cx.poch(&num)? / (cx.dth(&[h, h * x * y * z / qa])? * cx.dpoch(&[qa / x, qa / y, qa / z, a])?))
}

pub fn w12_integral<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, x, y, z, sq, s } = vals(cx);
    let h = cx.p("h");
    let r = a6(a);
    let sa = r * r * r;
    let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
    let aset = [sq * a / s, -sq * a / s, q * a / s, -q * a / s];
    let mut cset = vec![sq * sa * sx / (sy * sz), sq * sa * sy / (sx * sz), sq * sa * sz / (sx * sy)];
    cset.extend(om(sq * r.powi(5) / s));
    let d = (s / (sq * sa), sq * sa / s);
    Ok(vec![w12_k(cx, h)? * cx.poch(&[q])? / cx.two_pi() * cx.sym_integral(&aset, &cset, d, h)?])
}

pub fn w12_six<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, x, y, z, sq, .. } = vals(cx);
    let h = cx.p("h");
    let r = a6(a);
    let (sa, a13, a8) = (r * r * r, r * r, r.powi(8));
    let xx = x * y * z;
    let qa = q * a;
    let w = omega::<T>();
    let pre = w12_k(cx, h)?;
    let mut out = Vec::with_capacity(6);
    for (u, v, t) in rotations(x, y, z) {
        let mut den = vec![u, v / u, t / u, qa / (v * t)];
        den.extend(om(a13 / u));
        let mut bot = vec![q * u / v, q * u / t];
        bot.extend(om(q * u / a13));
        out.push(
            pre * cx.th(&[h * u, h * v * t / qa])?
                * cx.ratio(&[a / (u * u)], &den)?
                * cx.phi(&[u, qa / (v * t), sq * u / sa, -sq * u / sa, q * u / sa, -q * u / sa], &bot, q)?,
        );
    }
    let ww = cx.dpoch(&[w, w * w])?;
    for o in [cx.k(1.0), w, w * w] {
        out.push(
            pre / ww
                * cx.th(&[h * o * a13, h * o * o * xx / (q * a8)])?
                * cx.dpoch(&[q * o * a8 / xx, o * o * x / a13, o * o * y / a13, o * o * z / a13])?.inv()
                * cx.phi(
                    &[o * a13, q * o * a8 / xx, o * sq / r, -o * sq / r, o * q / r, -o * q / r],
                    &[q * w, q * w * w, q * o * a13 / x, q * o * a13 / y, q * o * a13 / z],
                    q,
                )?,
        );
    }
    Ok(out)
}

pub fn w10_constraints<T: Real>(cx: &Ctx<T>) -> QResult<()> {
    let P { q, a, x, y, z, .. } = vals(cx);
    let d = cx.p("b") * x * y * z;
    cx.less("|q³a⁶/(bxyz)²| < 1", (q * q * q * a.powi(6) / (d * d)).norm(), T::one())
}

pub fn w10<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, x, y, z, .. } = vals(cx);
    let b = cx.p("b");
    let q2 = cx.q.power_base(2)?;
    let d = b * x * y * z;
    let tail = [b * b, x, q * x, y, q * y, z, q * z];
    Ok(vec![cx.w_on(&q2, a * a, a, &tail, q * q * q * a.powi(6) / (d * d))?])
}

pub fn w10_two<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, x, y, z, sq, .. } = vals(cx);
    let b = cx.p("b");
    let xx = x * y * z;
    let qa2 = q * a * a;
    let t1 = cx.ratio(&[qa2, qa2 / (x * y), qa2 / (x * z), qa2 / (y * z)], &[qa2 / x, qa2 / y, qa2 / z, qa2 / xx])?
        * cx.phi(&[x, y, z, sq * a / b, -sq * a / b], &[qa2 / (b * b), xx / (a * a), sq * a, -sq * a], q)?;
    let u = q * sq * a * a * a / (b * xx);
    let v = q * sq * a * a * a / xx;
    let t2 = cx.ratio(
        &[qa2, x, y, z, qa2 * qa2 / (b * b * xx), sq * a / b, -sq * a / b, v, -v],
        &[qa2 / (b * b), qa2 / x, qa2 / y, qa2 / z, xx / qa2, sq * a, -sq * a, u, -u],
    )? * cx.phi(
        &[qa2 / (x * y), qa2 / (x * z), qa2 / (y * z), u, -u],
        &[q * qa2 / xx, qa2 * qa2 / (b * b * xx), v, -v],
        q,
    )?;
    Ok(vec![t1, t2])
}

fn w10_k<T: Real>(cx: &Ctx<T>, h: C<T>) -> QResult<C<T>> {
    let P { q, a, x, y, z, .. } = vals(cx);
    let b = cx.p("b");
    let qa2 = q * a * a;
    Ok(cx.poch(&[q * a, -q * a, x, y, z, qa2 / (x * y), qa2 / (x * z), qa2 / (y * z)])?
        / (cx.dth(&[h, h * x * y * z / qa2])? * cx.dpoch(&[q * a / b, -q * a / b, qa2 / x, qa2 / y, qa2 / z])?))
}

pub fn w10_integral<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, x, y, z, sq, s } = vals(cx);
    let b = cx.p("b");
    let h = cx.p("h");
    let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
    let aset = [q * a * a / s, -q * a * a / s, q * sq * a * a * a / (b * b * s)];
    let cset = [a * sq * sx / (sy * sz), a * sq * sy / (sx * sz), a * sq * sz / (sx * sy), q * a * a / (b * s), -q * a * a / (b * s)];
    let d = (s / (sq * a), sq * a / s);
    Ok(vec![w10_k(cx, h)? * cx.poch(&[q])? / cx.two_pi() * cx.sym_integral(&aset, &cset, d, h)?])
}

pub fn w10_five<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, x, y, z, sq, .. } = vals(cx);
    let b = cx.p("b");
    let h = cx.p("h");
    let xx = x * y * z;
    let qa2 = q * a * a;
    let pre = w10_k(cx, h)?;
    let mut out = Vec::with_capacity(5);
    for (u, v, w) in rotations(x, y, z) {
        out.push(
            pre * cx.th(&[h * u, h * v * w / qa2])?
                * cx.ratio(
                    &[sq * a / u, -sq * a / u, qa2 / (b * b * u)],
                    &[u, v / u, w / u, qa2 / (v * w), sq * a / (b * u), -sq * a / (b * u)],
                )?
                * cx.phi(
                    &[u, qa2 / (v * w), sq * u / a, -sq * u / a, b * b * u / (a * a)],
                    &[q * u / v, q * u / w, sq * b * u / a, -sq * b * u / a],
                    q,
                )?,
        );
    }
    let c = cx.poch(&[b, -b])? / (cx.k(2.0) * cx.poch(&[-q])?);
    for e in [1.0, -1.0] {
        let e = cx.k(e);
        let r = e * sq * a / b;
        let s = e * q * sq * a * a * a / (b * xx);
        let t = e * b / (sq * a);
        out.push(
            pre * c
                * cx.th(&[h * r, h / s])?
                * cx.dpoch(&[s, t * x, t * y, t * z])?.inv()
                * cx.phi(&[q / b, -q / b, r, e * sq * b / a, s], &[-q, q / (t * x), q / (t * y), q / (t * z)], q)?,
        );
    }
    Ok(out)
}

pub fn entries() -> Vec<IdentityDescriptor> {
    const W12: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "x", dist: Dist::Band },
        ParamRule { name: "y", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
    ];
    const W12_H: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "x", dist: Dist::Band },
        ParamRule { name: "y", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
        ParamRule { name: "h", dist: Dist::Unit },
    ];
    const W10: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "x", dist: Dist::Band },
        ParamRule { name: "y", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
    ];
    const W10_H: &[ParamRule] = &[
        ParamRule { name: "a", dist: Dist::Band },
        ParamRule { name: "b", dist: Dist::Band },
        ParamRule { name: "x", dist: Dist::Band },
        ParamRule { name: "y", dist: Dist::Band },
        ParamRule { name: "z", dist: Dist::Band },
        ParamRule { name: "h", dist: Dist::Unit },
    ];
    vec![
        entry("VJ12_SUM2", "very-well-poised ${}_{12}W_{11}$ in terms of a sum of", Kind::Sum, W12, &[], true, &[], sides!(w12, w12_two, w12_constraints)),
        entry("VJ12_INT", "${}_{12}W_{11}$ as a sum of two nonterminating balanced ${}_6\\phi_5$", Kind::Integral, W12_H, &["h", "sigma"], true, &[], sides!(w12, w12_integral, w12_constraints)),
        entry("VJ12_SIX", "Now we compute a six-term transformation for the ${}_{12}W_{11}$.", Kind::Sum, W12_H, &["h"], true, &[], sides!(w12, w12_six, w12_constraints)),
        entry("VJ10_SUM2", "sum of two balanced ${}_5\\phi_4(q)$", Kind::Sum, W10, &[], true, &[], sides!(w10, w10_two, w10_constraints)),
        entry("VJ10_INT", "this transformation to write the ${}_{10}W_9$ as a $q$-Mellin--Barnes integral", Kind::Integral, W10_H, &["h", "sigma"], true, &[], sides!(w10, w10_integral, w10_constraints)),
        entry("VJ10_FIVE", "Now we compute a five-term transformation for the ${}_{10}W_{9}$.", Kind::Sum, W10_H, &["h"], true, &[], sides!(w10, w10_five, w10_constraints)),
    ]
}
