//! Nonterminating well-poised `₃φ₂`: two-term expansion, contour integral,
//! five-term form and the two four-term forms obtained by killing a theta.

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
    let (a, q) = (cx.p("a"), cx.qq());
    P { q, a, b: cx.p("b"), c: cx.p("c"), z: cx.p("z"), sq: cx.q.sqrt(), sa: a.sqrt() }
}

pub fn constraints<T: Real>(cx: &Ctx<T>) -> QResult<()> {
    cx.less("|z| < 1", cx.p("z").norm(), T::one())
}

pub fn lhs<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, .. } = vals(cx);
    Ok(vec![cx.phi(&[a, b, c], &[q * a / b, q * a / c], z)?])
}

pub fn sum2<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa } = vals(cx);
    let bcz = b * c * z;
    let t1 = cx.ratio(&[bcz / q], &[bcz / (q * a)])?
        * cx.phi(&[sa, -sa, sq * sa, -sq * sa, q * a / (b * c)], &[q * a / b, q * a / c, bcz / q, q * q * a / bcz], q)?;
    let t2 = cx.ratio(&[a, b * z, c * z, q * a / (b * c)], &[q * a / b, q * a / c, z, q * a / bcz])?
        * cx.phi(
            &[bcz / (q * sa), -bcz / (q * sa), bcz / (sq * sa), -bcz / (sq * sa), z],
            &[b * z, c * z, bcz / a, bcz * bcz / (q * q * a)],
            q,
        )?;
    Ok(vec![t1, t2])
}

pub fn integral<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa } = vals(cx);
    let h = cx.p("h");
    let (sb, sc, sz) = (b.sqrt(), c.sqrt(), z.sqrt());
    let s = sb * sc * sz;
    let aset = [q * sa * sb * sz / sc, q * sa * sc * sz / sb, s * s * s / (q * sa)];
    let cset = [s, -s, sq * s, -sq * s, q * sa * sz / (sb * sc)];
    let d = (sa / s, s / (q * sa));
    let pre = cx.poch(&[q, a, q * a / (b * c)])?
        / (cx.two_pi() * cx.dth(&[h, h * q * a / (b * c * z)])? * cx.dpoch(&[q * a / b, q * a / c])?);
    Ok(vec![pre * cx.sym_integral(&aset, &cset, d, h)?])
}

/// The `±√a` and `±√(qa)` terms shared by the five- and four-term forms,
/// each multiplied by the given theta-and-product factor.
fn idem_series<T: Real>(cx: &Ctx<T>, s: f64) -> QResult<(C<T>, C<T>)> {
    let P { q, b, c, z, sq, sa, .. } = vals(cx);
    let ra = sa * cx.k(s);
    let rqa = sq * ra;
    let bcz = b * c * z;
    let u = cx.phi(&[ra, b / ra, c / ra, bcz / (q * ra), q * q * ra / bcz], &[-q, sq, -sq, b * c / ra], q)?;
    let v = cx.phi(
        &[rqa, sq * b / ra, sq * c / ra, bcz / rqa, q * q * rqa / bcz],
        &[-q, q * sq, -q * sq, sq * b * c / ra],
        q,
    )?;
    Ok((u, v))
}

pub fn five<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa } = vals(cx);
    let h = cx.p("h");
    let bcz = b * c * z;
    let den_th = cx.dth(&[h, h * q * a / bcz])?;
    let t1 = cx.th(&[h / z, h * q * a / (b * c)])? * cx.poch(&[a, b, c, b * b * c * c * z / (q * q * a)])?
        / (den_th * cx.dpoch(&[q * a / b, q * a / c, b * b * c * c / (q * q * a), z])?)
        * cx.phi(
            &[q / b, q / c, q * a / (b * c), z, q * q * q * a / (b * b * c * c * z)],
            &[sq * q * sa / (b * c), -sq * q * sa / (b * c), q * q * sa / (b * c), -q * q * sa / (b * c)],
            q,
        )?;
    let pre = cx.poch(&[a, q * a / (b * c)])? / (cx.k(2.0) * den_th * cx.dpoch(&[q * a / b, q * a / c])?);
    let mut out = vec![t1];
    for s in [1.0, -1.0] {
        let ra = sa * cx.k(s);
        let rqa = sq * ra;
        let (u, v) = idem_series(cx, s)?;
        let u = cx.th(&[h * ra, h * q * ra / bcz])? * cx.ratio(&[q * ra / b, q * ra / c, bcz / (q * ra)], &[ra, q * ra / (b * c), bcz / (q * ra)])? * u;
        let v = cx.th(&[h * rqa, h * rqa / bcz])? * cx.ratio(&[rqa / b, rqa / c, bcz / (q * rqa)], &[rqa, rqa / (b * c), bcz / rqa])? * v;
        out.push(pre * u);
        out.push(-pre * v * q / (cx.k(1.0) - q));
    }
    Ok(out)
}

pub fn four_a<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa } = vals(cx);
    let bcz = b * c * z;
    let pre = cx.poch(&[a])? / (cx.k(2.0) * cx.dth(&[z])? * cx.dpoch(&[q * a / b, q * a / c, b * c / a])?);
    let mut out = Vec::new();
    for s in [1.0, -1.0] {
        let ra = sa * cx.k(s);
        let rqa = sq * ra;
        let (u, v) = idem_series(cx, s)?;
        let u = cx.th(&[ra * z])? * cx.ratio(&[q * ra / b, q * ra / c, b * c / ra], &[ra])? * u;
        let v = cx.th(&[rqa * z])? * cx.ratio(&[rqa / b, rqa / c, sq * b * c / ra, bcz / (q * rqa)], &[rqa, bcz / rqa])? * v;
        out.push(pre * u);
        out.push(-pre * v * q / (cx.k(1.0) - q));
    }
    Ok(out)
}

pub fn four_b<T: Real>(cx: &Ctx<T>) -> Terms<T> {
    let P { q, a, b, c, z, sq, sa } = vals(cx);
    let bcz = b * c * z;
    let pre = cx.poch(&[a, q * a / (b * c)])?
        / (cx.k(2.0) * cx.dth(&[z.inv(), b * c / (q * a)])? * cx.dpoch(&[q * a / b, q * a / c])?);
    let mut out = Vec::new();
    for s in [1.0, -1.0] {
        let ra = sa * cx.k(s);
        let rqa = sq * ra;
        let (u, v) = idem_series(cx, s)?;
        let u = cx.th(&[b * c / (q * ra), (ra * z).inv()])? * cx.ratio(&[q * ra / b, q * ra / c], &[ra, q * ra / (b * c)])? * u;
        let v = cx.th(&[b * c / rqa, (rqa * z).inv()])?
            * cx.ratio(&[rqa / b, rqa / c, bcz / (q * rqa)], &[rqa, rqa / (b * c), bcz / rqa])?
            * v;
        out.push(pre * u);
        out.push(-pre * v * q / (cx.k(1.0) - q));
    }
    Ok(out)
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
    const KILLS: &[Kill] = &[
        Kill { target: "WP32_FOUR_A", term: Some(0), h: h_qn_z },
        Kill { target: "WP32_FOUR_B", term: Some(0), h: h_qn1_bc_a },
    ];
    vec![
        entry("WP32_INT", "we presented an integral for a nonterminating", Kind::Integral, WITH_H, &["h", "sigma"], true, &[], sides!(lhs, integral, constraints)),
        entry("WP32_SUM2", "transformation of a nonterminating well-poised", Kind::Sum, BASE, &[], true, &[], sides!(lhs, sum2, constraints)),
        entry("WP32_FIVE", "representation of a nonterminating very-well-poised ${}_3\\phi_2$", Kind::Sum, WITH_H, &["h"], true, KILLS, sides!(lhs, five, constraints)),
        entry("WP32_FOUR_A", "Then replacing the infinite $q$-shifted", Kind::Sum, BASE, &[], true, &[], sides!(lhs, four_a, constraints)),
        entry("WP32_FOUR_B", "Similarly, if one chooses a $h=q^n\\frac{bc}{qa}$", Kind::Sum, BASE, &[], true, &[], sides!(lhs, four_b, constraints)),
    ]
}
