//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#[path = "../../qmb/tests/common/mod.rs"]
mod common;

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use common::{aw_params, gm_problem, sym_problem, C};
use qmb::awmoments::{mu_kim_stanton_extended, mu_quadrature, mu_symmetric};
use qmb::contour::{g_m_integral, g_m_sum_c, g_m_sum_d, h_sum, j_sum, symmetric_integral, DEFAULT_EPS_QUAD};
use qmb::identities::{catalog, check, find, kill_check, rebind, rel_residual, CheckOptions, Status};
use qmb::sampler::{annulus, rng_for, sample_desc, sample_stats, SampleConfig};
use qseries::{
    exclusion_check, phi, qgamma, qpoch, qpoch_all, qpoch_inf, theta, vwp, Extent, PartialThetaRep, QBase,
    SeriesSpec, VWPSpec,
};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

const POINTS: usize = 50;

/// Strict relative difference, for checks with no natural scale floor.
fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn qb(rng: &mut ChaCha20Rng, band: (f64, f64)) -> QBase<f64> {
    QBase::new(annulus(rng, band)).unwrap()
}

fn off(x: C, q: &QBase<f64>) -> bool {
    !exclusion_check(x, q, 1e-3).is_hit()
}

/// Worst residual of `f` over `POINTS` accepted draws; `f` returns `None`
/// for a draw outside its domain.
fn worst(name: &str, mut f: impl FnMut(&mut ChaCha20Rng) -> Option<f64>) -> f64 {
    let mut rng = rng_for(1, name);
    let (mut got, mut w) = (0, 0.0f64);
    while got < POINTS {
        if let Some(r) = f(&mut rng) {
            w = w.max(r);
            got += 1;
        }
    }
    w
}

fn primitives() -> (bool, String) {
    let start = Instant::now();
    let reps = [
        PartialThetaRep::Sum,
        PartialThetaRep::PadTop(1),
        PartialThetaRep::PadTop(2),
        PartialThetaRep::PadTop(3),
        PartialThetaRep::Factored01,
        PartialThetaRep::Factored01q,
        PartialThetaRep::AndrewsWarnaar,
    ];
    let results = [
        ("shift law", worst("shift", |r| {
            let (a, q) = (annulus(r, (0.05, 2.0)), qb(r, (0.1, 0.9)));
            let (n, m) = (r.gen_range(0..20), r.gen_range(0..20));
            Some(rel(qpoch(a, &q, n + m), qpoch(a, &q, n) * qpoch(a * q.pow(n as i32), &q, m)))
        })),
        ("square split", worst("split1", |r| {
            let (a, q) = (annulus(r, (0.05, 1.5)), qb(r, (0.05, 0.6)));
            let s = q.sqrt();
            let rhs = qpoch_all(&[a, -a, s * a, -s * a], &q, Extent::Infinite).ok()?;
            Some(rel(qpoch_inf(a * a, &q).ok()?, rhs))
        })),
        ("base-square split", worst("split2", |r| {
            let (a, q) = (annulus(r, (0.05, 1.5)), qb(r, (0.05, 0.6)));
            let q2 = q.power_base(2).unwrap();
            Some(rel(qpoch_inf(a * a, &q2).ok()?, qpoch_all(&[a, -a], &q, Extent::Infinite).ok()?))
        })),
        ("theta ratio", worst("theta", |r| {
            let (a, q) = (annulus(r, (0.1, 3.0)), qb(r, (0.1, 0.7)));
            if !off(a, &q) {
                return None;
            }
            Some(rel(theta(q.q * a, &q).ok()? / theta(a, &q).ok()?, -a.inv()))
        })),
        ("theta zeros", worst("zeros", |r| {
            let q = qb(r, (0.1, 0.7));
            let n = r.gen_range(-3..=3);
            Some(theta(q.pow(n), &q).ok()?.norm() / theta(-q.pow(n), &q).ok()?.norm())
        })),
        ("partial theta representations", worst("partial", |r| {
            let (z, q) = (annulus(r, (0.01, 0.95)), qb(r, (0.1, 0.6)));
            if !off(z, &q) || !off(-z, &q) {
                return None;
            }
            let v: Vec<_> = reps.iter().map(|&p| qseries::partial_theta(z, &q, p)).collect::<Result<_, _>>().ok()?;
            Some(v.iter().map(|&x| rel(x, v[0])).fold(0.0, f64::max))
        })),
        ("q-binomial theorem", worst("qbinom", |r| {
            let (a, z, q) = (annulus(r, (0.05, 2.0)), annulus(r, (0.01, 0.8)), qb(r, (0.05, 0.6)));
            if !off(a, &q) {
                return None;
            }
            let v = phi(&SeriesSpec { numer: vec![a], denom: vec![], pad: 0, q, z }).ok()?;
            Some(rel(v, qpoch_inf(a * z, &q).ok()? / qpoch_inf(z, &q).ok()?))
        })),
        ("geometric series", worst("geom", |r| {
            let (z, q) = (annulus(r, (0.0, 0.9)), qb(r, (0.05, 0.6)));
            let v = phi(&SeriesSpec { numer: vec![q.q], denom: vec![], pad: 0, q, z }).ok()?;
            Some(rel(v, (C::new(1.0, 0.0) - z).inv()))
        })),
        ("6W5 summation", worst("w65", |r| {
            let a = annulus(r, (0.1, 0.9));
            let [b, c, d] = [0; 3].map(|_| annulus(r, (0.4, 0.95)));
            let q: QBase<f64> = QBase::real(r.gen_range(0.1..0.6)).unwrap();
            let qa = q.q * a;
            let z = qa / (b * c * d);
            if z.norm() > 0.9 || ![qa / b, qa / c, qa / d, z].iter().all(|&x| off(x, &q)) {
                return None;
            }
            let v = vwp(&VWPSpec { a, sqrt_a: None, tail: vec![b, c, d], q, z }).ok()?;
            let num = qpoch_all(&[qa, qa / (b * c), qa / (b * d), qa / (c * d)], &q, Extent::Infinite).ok()?;
            let den = qpoch_all(&[qa / b, qa / c, qa / d, z], &q, Extent::Infinite).ok()?;
            Some(rel(v, num / den))
        })),
    ];
    let secs = start.elapsed().as_secs_f64();
    let bad: Vec<_> = results.iter().filter(|(_, w)| !(*w < 1e-10)).map(|(n, w)| format!("{n} {w:.1e}")).collect();
    let top = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let ok = bad.is_empty() && secs < 30.0;
    (ok, format!("9 properties x {POINTS} points, worst {top:.1e} (< 1e-10), {secs:.2} s (< 30 s) {}", bad.join(", ")))
}

fn contour_engine() -> (bool, String) {
    let mut top = 0.0f64;
    let mut n = 0;
    for shape in [(1, 1, 1, 1), (2, 1, 2, 1), (0, 0, 2, 2)] {
        let mut rng = rng_for(2, &format!("accept{shape:?}"));
        for m in -2..=2 {
            for _ in 0..10 {
                let mut p = gm_problem(&mut rng, shape, m);
                let (Ok(int), Ok(sd), Ok(sc)) = (g_m_integral(&p, DEFAULT_EPS_QUAD), g_m_sum_d(&p), g_m_sum_c(&p)) else {
                    return (false, format!("{shape:?} m={m}: evaluation error"));
                };
                let int = int.value;
                let mirror = g_m_integral(&p.mirrored(), DEFAULT_EPS_QUAD).map(|v| v.value);
                let (lo, hi) = (p.c.max_abs(), 1.0 / p.d.max_abs());
                p.sigma = if lo > 0.0 { lo + 0.25 * (hi - lo) } else { 0.75 * hi };
                let moved = g_m_integral(&p, DEFAULT_EPS_QUAD).map(|v| v.value);
                let (Ok(mirror), Ok(moved)) = (mirror, moved) else {
                    return (false, format!("{shape:?} m={m}: evaluation error"));
                };
                top = [rel_residual(int, sd.value), rel_residual(int, sc.value), rel_residual(int, mirror), rel_residual(int, moved)]
                    .into_iter()
                    .fold(top, f64::max);
                n += 1;
            }
        }
    }
    (top < 1e-9, format!("{n} problems over 3 shapes, m in -2..2: integral/d-sum/c-sum/mirror/moved sigma worst {top:.1e} (< 1e-9)"))
}

fn symmetric_case() -> (bool, String) {
    let mut top = 0.0f64;
    for (na, nc) in [(0, 2), (1, 3), (2, 4)] {
        let mut rng = rng_for(3, &format!("accept{na}{nc}"));
        for _ in 0..10 {
            let p = sym_problem(&mut rng, na, nc);
            let (Ok(int), Ok(h), Ok(j), Ok(th), Ok(qq)) =
                (symmetric_integral(&p, DEFAULT_EPS_QUAD), h_sum(&p), j_sum(&p), p.theta_factor(), qpoch_inf(p.q.q, &p.q))
            else {
                return (false, format!("({na},{nc}): evaluation error"));
            };
            let int = int.value * qq / (2.0 * PI);
            let h = h.value * th;
            top = [rel_residual(int, h), rel_residual(int, j.value), rel_residual(h, j.value)].into_iter().fold(top, f64::max);
        }
    }
    (top < 1e-9, format!("(A,C) in (0,2),(1,3),(2,4), 10 points each: integral/H/J worst {top:.1e} (< 1e-9)"))
}

fn full_catalog() -> (bool, String) {
    let start = Instant::now();
    let opts = CheckOptions::default();
    let cfg = SampleConfig { seed: 1, ..Default::default() };
    let (mut total, mut fails, mut skips, mut rejects, mut worst_skip) = (0, Vec::new(), 0, 0, 0.0f64);
    let mut top = 0.0f64;
    let cat = catalog();
    for d in &cat {
        let s = match sample_stats(d, &cfg, 20) {
            Ok(s) => s,
            Err(e) => return (false, format!("{}: {e}", d.id)),
        };
        rejects += s.rejects;
        let mut skipped = 0;
        for b in &s.points {
            let r = check(d, b, &opts);
            total += 1;
            match r.status {
                Status::Pass => top = top.max(r.rel_residual.unwrap()),
                Status::Fail => fails.push(d.id),
                Status::Skipped(_) => skipped += 1,
            }
        }
        skips += skipped;
        worst_skip = worst_skip.max(skipped as f64 / s.points.len() as f64);
    }
    let secs = start.elapsed().as_secs_f64();
    fails.dedup();
    let ok = cat.len() >= 28 && fails.is_empty() && worst_skip < 0.3 && secs < 600.0;
    (
        ok,
        format!(
            "{} ids x 20 points = {total}, fail {} {:?}, skipped {skips} (worst id {:.0}%, < 30%), worst residual {top:.1e} (< 1e-8), {secs:.1} s (< 600 s); sampler rejected {rejects} draws",
            cat.len(),
            fails.len(),
            fails,
            100.0 * worst_skip
        ),
    )
}

fn degenerations() -> (bool, String) {
    let opts = CheckOptions::default();
    let cfg = SampleConfig { seed: 4, ..Default::default() };
    let (mut killed, mut reduced, mut n) = (0.0f64, 0.0f64, 0);
    for d in catalog().iter().filter(|d| !d.kills.is_empty()) {
        let Ok(pts) = sample_desc(d, &cfg, 5) else { return (false, format!("{}: sampling failed", d.id)) };
        for b in &pts {
            for kill in d.kills {
                for k in -1..=2 {
                    match kill_check(d, kill, b, k, &opts) {
                        Ok(r) => {
                            killed = killed.max(r.killed_ratio);
                            reduced = reduced.max(r.reduced_residual);
                            n += 1;
                        }
                        Err(e) => return (false, format!("{} -> {}: {e}", d.id, kill.target)),
                    }
                }
            }
        }
    }
    let four = find("VWP87_FOUR").unwrap();
    let watson = find("WATSON_LIMIT").unwrap();
    let (mut wmax, mut wn) = (0.0f64, 0);
    let Ok(pts) = sample_desc(&watson, &SampleConfig { seed: 8, ..Default::default() }, 20) else {
        return (false, "Watson sampling failed".into());
    };
    for b in &pts {
        let get = |k: &str| b.iter().find(|(n, _)| n == k).unwrap().1;
        let at = rebind(&rebind(b, "f", get("q").powi(-(get("n").re as i32))), "h", C::from_polar(1.0, 0.9));
        let (r4, rw) = (check(&four, &at, &opts), check(&watson, b, &opts));
        if let (Some(l), Some(w)) = (r4.rhs, rw.rhs) {
            wmax = wmax.max(rel_residual(l, w));
            wn += 1;
        }
    }
    let ok = killed < 1e-12 && reduced < 1e-8 && wn >= 10 && wmax < 1e-9;
    (
        ok,
        format!(
            "{n} kills: killed term worst {killed:.1e} of scale (< 1e-12), reduced identity worst {reduced:.1e}; four-term at f=q^-n vs Watson {wn} points worst {wmax:.1e} (< 1e-9)"
        ),
    )
}

fn aw_moments() -> (bool, String) {
    let mut rng = rng_for(5, "accept-aw");
    let t = [C::new(0.3, 0.4), C::new(-0.6, 0.2)];
    let (mut tri, mut mu0, mut tdep) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let p = aw_params(&mut rng);
        for n in 0..=6 {
            let (Ok(mq), Ok(ms), Ok(k1), Ok(k2)) = (
                mu_quadrature(n, &p, DEFAULT_EPS_QUAD),
                mu_symmetric(n, &p),
                mu_kim_stanton_extended(n, t[0], &p),
                mu_kim_stanton_extended(n, t[1], &p),
            ) else {
                return (false, format!("n={n}: evaluation error"));
            };
            let (mq, ms, k1, k2) = (mq.value, ms.0, k1.0, k2.0);
            tri = tri.max(rel_residual(mq, ms)).max(rel_residual(mq, k1));
            tdep = tdep.max(rel_residual(k1, k2));
            if n == 0 {
                mu0 = [mq, ms, k1].iter().map(|m| (m - 1.0).norm()).fold(mu0, f64::max);
            }
        }
    }
    let ok = tri < 1e-8 && mu0 < 1e-10 && tdep < 1e-10;
    (ok, format!("20 draws, n=0..6: triple agreement worst {tri:.1e} (< 1e-8), |mu0-1| {mu0:.1e} (< 1e-10), t-dependence {tdep:.1e} (< 1e-10)"))
}

fn qgamma_trend() -> (bool, String) {
    let gammas = [(0.5, PI.sqrt()), (1.5, PI.sqrt() / 2.0), (2.5, 0.75 * PI.sqrt())];
    let mut detail = Vec::new();
    let mut ok = true;
    for (x, g) in gammas {
        let errs: Vec<f64> = (3..=8)
            .map(|k| {
                let q: QBase<f64> = QBase::real(1.0 - 2f64.powi(-k)).unwrap();
                qgamma(C::new(x, 0.0), &q).map_or(f64::NAN, |v| (v - g).norm())
            })
            .collect();
        ok &= errs.windows(2).all(|w| w[1] < w[0]);
        detail.push(format!("x={x}: {:.1e} -> {:.1e}", errs[0], errs[5]));
    }
    (ok, format!("|Gamma_q - Gamma| strictly decreasing for k=3..8; {}", detail.join(", ")))
}

fn reproducibility() -> (bool, String) {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_qmb"))
            .args(["check", "--count", "2", "--seed", "11", "--jobs", jobs])
            .env_remove("QMB_PRECISION")
            .output()
    };
    let (Ok(a), Ok(b), Ok(c)) = (run("1"), run("1"), run("3")) else { return (false, "could not run qmb".into()) };
    let ok = !a.stdout.is_empty() && a.stdout == b.stdout && a.stdout == c.stdout;
    (ok, format!("two identical runs and a 3-thread run: {} bytes each, identical = {ok}", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> (bool, String)); 8] = [
        ("primitive suite", primitives),
        ("contour engine", contour_engine),
        ("symmetric two-pole triangle", symmetric_case),
        ("full catalog", full_catalog),
        ("degenerations", degenerations),
        ("Askey-Wilson moments", aw_moments),
        ("q-gamma limit trend", qgamma_trend),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        println!("{} criterion {} ({name}): {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
        failed += usize::from(!ok);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
