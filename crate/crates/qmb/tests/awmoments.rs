//! The three moment routes against each other.

mod common;

use common::{aw_params, C};
use qmb::awmoments::{aw_weight, mu_kim_stanton, mu_kim_stanton_extended, mu_quadrature, mu_symmetric, AWParams, WeightForm};
use qmb::contour::DEFAULT_EPS_QUAD;
use qmb::identities::rel_residual;
use qmb::sampler::rng_for;
use qseries::QBase;

fn params(a: [f64; 4], q: f64) -> AWParams<f64> {
    AWParams::new(a.map(|x| C::new(x, 0.0)), QBase::real(q).unwrap()).unwrap()
}

#[test]
fn weight_examples() {
    let p = params([0.1, 0.2, 0.3, 0.4], 0.5);
    assert!(aw_weight(0.0, &p, WeightForm::Squares).unwrap().norm() < 1e-15);
    let s = aw_weight(1.1, &p, WeightForm::Squares).unwrap();
    assert!(rel_residual(s, aw_weight(1.1, &p, WeightForm::Split).unwrap()) < 1e-14);
    assert!(rel_residual(s, aw_weight(-1.1, &p, WeightForm::Squares).unwrap()) < 1e-14);
}

#[test]
fn reference_point() {
    let p = params([0.1, 0.2, 0.3, 0.4], 0.5);
    let mq = mu_quadrature(0, &p, DEFAULT_EPS_QUAD).unwrap().value;
    assert!((mq - 1.0).norm() < 1e-10);
    let m2 = mu_quadrature(2, &p, DEFAULT_EPS_QUAD).unwrap().value;
    let ks = mu_kim_stanton(2, C::new(0.37, 0.21), &p).unwrap().0;
    assert!(rel_residual(m2, ks) < 1e-10, "{m2} {ks}");
}

#[test]
fn triple_agreement() {
    let mut rng = rng_for(5, "aw");
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = aw_params(&mut rng);
        for n in 0..=6 {
            let mq = mu_quadrature(n, &p, DEFAULT_EPS_QUAD).unwrap().value;
            let ms = mu_symmetric(n, &p).unwrap().0;
            let mk = mu_kim_stanton_extended(n, C::new(0.3, 0.4), &p).unwrap().0;
            let r = rel_residual(mq, ms).max(rel_residual(mq, mk));
            assert!(r < 1e-8, "n={n} {p:?}: {mq} {ms} {mk}");
            worst = worst.max(r);
            if n == 0 {
                for m in [mq, ms, mk] {
                    assert!((m - 1.0).norm() < 1e-10, "μ₀ = {m}");
                }
            }
        }
    }
    println!("worst {worst:.2e}");
}

#[test]
fn kim_stanton_is_t_independent() {
    let mut rng = rng_for(6, "ks");
    for _ in 0..20 {
        let p = aw_params(&mut rng);
        for n in 0..=6 {
            let x = mu_kim_stanton_extended(n, C::new(0.3, 0.4), &p).unwrap().0;
            let y = mu_kim_stanton_extended(n, C::new(-0.6, 0.2), &p).unwrap().0;
            assert!(rel_residual(x, y) < 1e-10, "n={n}: {x} {y}");
        }
    }
}

#[test]
fn kim_stanton_binary64_at_low_order() {
    let mut rng = rng_for(7, "ks64");
    for _ in 0..20 {
        let p = aw_params(&mut rng);
        for n in 0..=3 {
            let x = mu_kim_stanton(n, C::new(1.0, 0.3), &p).unwrap().0;
            let y = mu_kim_stanton_extended(n, C::new(1.0, 0.3), &p).unwrap().0;
            assert!(rel_residual(x, y) < 1e-10, "n={n}: {x} {y}");
        }
    }
}

#[test]
fn first_moment_is_symmetric() {
    let (a, q) = ([0.15, 0.35, 0.5, 0.25], 0.4);
    let base = mu_quadrature(1, &params(a, q), DEFAULT_EPS_QUAD).unwrap().value;
    for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]] {
        let v = mu_quadrature(1, &params(perm.map(|i| a[i]), q), DEFAULT_EPS_QUAD).unwrap().value;
        assert!(rel_residual(base, v) < 1e-12);
    }
}

#[test]
fn cosine_power_binomial_expansion() {
    let binom = |n: u32, k: u32| (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    for n in 0..=12u32 {
        for theta in [0.0, 0.3, 1.1, 2.9, -1.7] {
            let sum: C = (0..=n)
                .map(|k| C::from_polar(binom(n, k), theta * (n as f64 - 2.0 * k as f64)))
                .sum::<C>()
                / 2f64.powi(n as i32);
            assert!((sum - C::new(f64::cos(theta).powi(n as i32), 0.0)).norm() < 1e-13);
        }
    }
}

#[test]
fn order_cap() {
    let p = params([0.1, 0.2, 0.3, 0.4], 0.5);
    assert!(mu_symmetric(13, &p).is_err());
}
