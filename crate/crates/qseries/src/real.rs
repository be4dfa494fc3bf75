//! Scalar abstraction shared by every evaluator.
//!
//! All kernels are generic over [`Real`]; `f64` is the default backend and
//! [`Extended`] is a quad-precision backend for ill-conditioned theta quotients.

use std::fmt;

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign, ToPrimitive};

pub trait Real: Float + FloatConst + NumAssign + fmt::Debug + Send + Sync + 'static {
    /// Backend name as accepted on the command line.
    const NAME: &'static str;

    fn lit(x: f64) -> Self;

    fn as_f64(self) -> f64;

    /// Default relative truncation tolerance for products and series.
    fn default_eps_tail() -> Self;
}

impl Real for f64 {
    const NAME: &'static str = "binary64";

    #[inline]
    fn lit(x: f64) -> Self {
        x
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }

    fn default_eps_tail() -> Self {
        1e-15
    }
}

/// Complex literal from two `f64` parts.
#[inline]
pub fn cx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Lossy conversion of a complex value to binary64.
#[inline]
pub fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.as_f64(), z.im.as_f64())
}

/// Widening conversion of a binary64 complex value.
#[inline]
pub fn from_c64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::lit(z.re), T::lit(z.im))
}

/// Quad-precision scalar (113-bit significand) from gcc's libquadmath.
pub type Extended = f128::f128;

impl Real for Extended {
    const NAME: &'static str = "extended";

    #[inline]
    fn lit(x: f64) -> Self {
        f128::f128::from(x)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn default_eps_tail() -> Self {
        Self::lit(1e-30)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_carries_more_digits() {
        let third = Extended::lit(1.0) / Extended::lit(3.0);
        assert!((third - Extended::lit(1.0 / 3.0)).abs().as_f64() > 1e-18);
        let x = Extended::lit(7.0).recip().exp().ln() * Extended::lit(7.0) - Extended::lit(1.0);
        assert!(x.abs().as_f64() < 1e-30);
        let x = Extended::lit(2.0).sqrt();
        assert!((x * x - Extended::lit(2.0)).abs().as_f64() < 1e-30);
    }

    #[test]
    fn complex_sqrt_over_extended() {
        let z = Complex::new(Extended::lit(-4.0), Extended::lit(0.0));
        let r = z.sqrt();
        assert!((r.im - Extended::lit(2.0)).abs().as_f64() < 1e-28);
    }
}
