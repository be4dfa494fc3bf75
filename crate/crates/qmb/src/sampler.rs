//! Rejection sampling of admissible parameter points for catalog entries.
//!
//! Every draw is screened against the entry's constraints and exclusion
//! guards at the (stricter) sampling guard, and against numerical
//! cancellation between terms that binary64 cannot resolve.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::identities::{find, screen, Bound, Dist, IdentityDescriptor};

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub seed: u64,
    /// Moduli band for `q`.
    pub q_band: (f64, f64),
    /// Moduli band for generic complex parameters.
    pub param_band: (f64, f64),
    /// Distance kept from `Ω_q` and `Υ_q`.
    pub guard: f64,
    /// Consecutive rejected draws after which sampling gives up.
    pub max_rejects: usize,
    /// Draw `q` in the complex annulus instead of on the positive axis.
    pub complex_q: bool,
    /// Largest accepted ratio of the biggest single term to the sum.
    pub max_cancellation: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            q_band: (0.1, 0.6),
            param_band: (0.1, 0.95),
            guard: 1e-3,
            max_rejects: 10_000,
            complex_q: false,
            max_cancellation: 1e5,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("unknown identity {0}")]
    UnknownId(String),
    #[error("sampling exhausted for {id} after {rejects} consecutive rejects (last: {last})")]
    SamplingExhausted { id: String, rejects: usize, last: String },
    #[error("invalid sampling band {0:?}")]
    InvalidBand((f64, f64)),
}

impl SampleError {
    pub fn kind(&self) -> &'static str {
        match self {
            SampleError::UnknownId(_) => "UnknownId",
            SampleError::SamplingExhausted { .. } => "SamplingExhausted",
            SampleError::InvalidBand(_) => "InvalidBand",
        }
    }
}

/// FNV-1a, used to give each id its own ChaCha stream.
fn stream_id(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// Independent generator for `(seed, id)`.
pub fn rng_for(seed: u64, id: &str) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(id));
    rng
}

/// Uniform-in-area point of the annulus `lo < |z| < hi`.
pub fn annulus<R: Rng>(rng: &mut R, (lo, hi): (f64, f64)) -> Complex<f64> {
    let r = (lo * lo + rng.gen::<f64>() * (hi * hi - lo * lo)).sqrt();
    Complex::from_polar(r, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}

fn valid((lo, hi): (f64, f64)) -> bool {
    lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi
}

/// The `q` band for an entry: the configured band narrowed by the entry's own.
fn q_band(desc: &IdentityDescriptor, cfg: &SampleConfig) -> (f64, f64) {
    match desc.q_band {
        Some((lo, hi)) => {
            let b = (cfg.q_band.0.max(lo), cfg.q_band.1.min(hi));
            if b.0 < b.1 {
                b
            } else {
                (lo, hi)
            }
        }
        None => cfg.q_band,
    }
}

fn draw<R: Rng>(rng: &mut R, desc: &IdentityDescriptor, cfg: &SampleConfig) -> Bound {
    let qb = q_band(desc, cfg);
    let q = if cfg.complex_q { annulus(rng, qb) } else { Complex::new(rng.gen_range(qb.0..qb.1), 0.0) };
    let mut out = vec![("q".to_string(), q)];
    for rule in desc.params {
        let v = match rule.dist {
            Dist::Band => annulus(rng, cfg.param_band),
            Dist::Annulus(lo, hi) => annulus(rng, (lo, hi)),
            Dist::Unit => Complex::from_polar(1.0, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)),
            Dist::Positive(lo, hi) => Complex::new(rng.gen_range(lo..hi), 0.0),
            Dist::Choice(xs) => Complex::new(xs[rng.gen_range(0..xs.len())] as f64, 0.0),
        };
        out.push((rule.name.to_string(), v));
    }
    out
}

/// Why a point is not admissible, or `None` if it is.
pub fn rejection(desc: &IdentityDescriptor, bound: &Bound, cfg: &SampleConfig) -> Option<String> {
    match screen(desc, bound, cfg.guard) {
        Err(e) => Some(format!("{}: {e}", e.kind())),
        Ok(c) if c > cfg.max_cancellation => Some(format!("cancellation factor {c:.3e}")),
        Ok(_) => None,
    }
}

/// Accepted points together with the number of rejected draws.
#[derive(Clone, Debug)]
pub struct Sampled {
    pub points: Vec<Bound>,
    /// Total rejected draws.
    pub rejects: usize,
}

/// `count` admissible points for `desc`, deterministic in `(cfg.seed, id)`.
pub fn sample_stats(desc: &IdentityDescriptor, cfg: &SampleConfig, count: usize) -> Result<Sampled, SampleError> {
    for band in [cfg.q_band, cfg.param_band] {
        if !valid(band) {
            return Err(SampleError::InvalidBand(band));
        }
    }
    let mut rng = rng_for(cfg.seed, desc.id);
    let mut points = Vec::with_capacity(count);
    let (mut rejects, mut run) = (0, 0);
    while points.len() < count {
        let b = draw(&mut rng, desc, cfg);
        match rejection(desc, &b, cfg) {
            None => {
                points.push(b);
                run = 0;
            }
            Some(why) => {
                rejects += 1;
                run += 1;
                if run >= cfg.max_rejects {
                    return Err(SampleError::SamplingExhausted { id: desc.id.into(), rejects: run, last: why });
                }
            }
        }
    }
    Ok(Sampled { points, rejects })
}

pub fn sample_desc(desc: &IdentityDescriptor, cfg: &SampleConfig, count: usize) -> Result<Vec<Bound>, SampleError> {
    sample_stats(desc, cfg, count).map(|s| s.points)
}

pub fn sample(id: &str, cfg: &SampleConfig, count: usize) -> Result<Vec<Bound>, SampleError> {
    let desc = find(id).ok_or_else(|| SampleError::UnknownId(id.into()))?;
    sample_desc(&desc, cfg, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_stays_in_band() {
        let mut rng = rng_for(1, "x");
        for _ in 0..1000 {
            let z = annulus(&mut rng, (0.1, 0.95));
            assert!(z.norm() > 0.1 - 1e-15 && z.norm() < 0.95 + 1e-15);
        }
    }

    #[test]
    fn streams_differ_by_id() {
        let a: f64 = rng_for(3, "A").gen();
        let b: f64 = rng_for(3, "B").gen();
        assert_ne!(a, b);
    }

    #[test]
    fn bad_band_is_rejected() {
        let cfg = SampleConfig { param_band: (0.5, 0.2), ..Default::default() };
        assert!(matches!(sample("WP32_SUM2", &cfg, 1), Err(SampleError::InvalidBand(_))));
    }
}
