//! Random admissible problem instances shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex;
use qmb::awmoments::AWParams;
use qmb::contour::{GmProblem, SymmetricProblem};
use qmb::sampler::annulus;
use qseries::{exclusion_check, ParamSet, QBase};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

pub type C = Complex<f64>;

pub fn set(xs: &[C]) -> ParamSet<f64> {
    ParamSet::from_values(xs).unwrap()
}

pub fn prod(xs: &[C]) -> C {
    xs.iter().fold(C::new(1.0, 0.0), |p, &x| p * x)
}

pub fn draw(rng: &mut ChaCha20Rng, n: usize, band: (f64, f64)) -> Vec<C> {
    (0..n).map(|_| annulus(rng, band)).collect()
}

pub fn off(x: C, q: &QBase<f64>) -> bool {
    !exclusion_check(x, q, 1e-3).is_hit()
}

/// A random problem of shape `(A, B, C, D)` for which the integral and both
/// applicable residue sums are well defined and converge geometrically.
pub fn gm_problem(rng: &mut ChaCha20Rng, shape: (usize, usize, usize, usize), m: i32) -> GmProblem<f64> {
    loop {
        let q = QBase::new(annulus(rng, (0.1, 0.5))).unwrap();
        let a = draw(rng, shape.0, (0.05, 0.4));
        let b = draw(rng, shape.1, (0.05, 0.4));
        let c = draw(rng, shape.2, (0.2, 0.8));
        let d = draw(rng, shape.3, (0.2, 0.8));
        let Ok(p) = GmProblem::new(set(&a), set(&b), set(&c), set(&d), m, q) else { continue };
        if c.iter().fold(0.0f64, |s, x| s.max(x.norm())) * d.iter().fold(0.0f64, |s, x| s.max(x.norm())) > 0.8 {
            continue;
        }
        if shape.3 == shape.1 && (q.pow(m) * prod(&b)).norm() > 0.5 * prod(&d).norm() {
            continue;
        }
        if shape.2 == shape.0 && (q.pow(-m) * prod(&a)).norm() > 0.5 * prod(&c).norm() {
            continue;
        }
        let cross = d.iter().all(|&x| c.iter().all(|&y| off(x * y, &q)));
        let ratios = |v: &[C]| v.iter().enumerate().all(|(i, &x)| v.iter().enumerate().all(|(j, &y)| i == j || off(x / y, &q)));
        if cross && ratios(&c) && ratios(&d) {
            return p;
        }
    }
}

/// A random symmetric problem with `A` upper and `C` lower parameters and a
/// free `f` on the unit circle.
pub fn sym_problem(rng: &mut ChaCha20Rng, na: usize, nc: usize) -> SymmetricProblem<f64> {
    loop {
        let q = QBase::new(annulus(rng, (0.1, 0.5))).unwrap();
        let a = draw(rng, na, (0.1, 0.6));
        let c = draw(rng, nc, (0.1, 0.7));
        let d = (annulus(rng, (0.2, 0.8)), annulus(rng, (0.2, 0.8)));
        let f = C::from_polar(1.0, rng.gen_range(-3.1..3.1));
        let Ok(p) = SymmetricProblem::new(set(&a), set(&c), d, f, q) else { continue };
        if p.c.max_abs() * d.0.norm().max(d.1.norm()) > 0.8 {
            continue;
        }
        if nc == na + 2 && (q.q * prod(&a)).norm() > 0.5 * (d.0 * d.1 * prod(&c)).norm() {
            continue;
        }
        let mut ok = off(d.0 / d.1, &q) && off(f, &q) && off(f * d.0 / d.1, &q);
        for (k, &x) in c.iter().enumerate() {
            ok &= off(f * x * d.0, &q) && off(f / (x * d.1), &q);
            ok &= c.iter().enumerate().all(|(l, &y)| k == l || off(y / x, &q));
        }
        if ok {
            return p;
        }
    }
}

/// Real Askey–Wilson parameters for which every `₆W₅` of the symmetric
/// route converges, i.e. `q < abcd`, with pairwise ratios kept away from 1.
pub fn aw_params(rng: &mut ChaCha20Rng) -> AWParams<f64> {
    loop {
        let a: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.7..0.95));
        let q = rng.gen_range(0.1..0.3);
        let separated = (0..4).all(|i| (0..i).all(|j| (a[i] - a[j]).abs() > 0.01));
        if separated && q < 0.8 * a.iter().product::<f64>() {
            return AWParams::new(a.map(|x| C::new(x, 0.0)), QBase::real(q).unwrap()).unwrap();
        }
    }
}
