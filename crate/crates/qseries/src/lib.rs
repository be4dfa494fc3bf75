//! Numerical kernel for q-series: q-shifted factorials, q-gamma, theta and
//! partial theta functions, and basic hypergeometric series.
//!
//! Every routine is generic over the scalar backend [`Real`], so the same
//! code runs in binary64 or in quad precision ([`Extended`]).

pub mod error;
pub mod hyperseries;
pub mod qcore;
pub mod real;

pub use error::{QError, QResult};
pub use hyperseries::{classify, phi, phi_counted, vwp, vwp_counted, SeriesClass, SeriesSpec, SeriesValue, VWPSpec};
pub use qcore::{
    exclusion_check, omega, partial_theta, qbinomial, qgamma, qpoch, qpoch_all, qpoch_inf, qpoch_multi, theta,
    theta_all, theta_bilateral, ExclusionKind, ExclusionWitness, Extent, ParamSet, PartialThetaRep, QBase, EVAL_GUARD,
};
pub use real::{cx, from_c64, to_c64, Extended, Real};

pub use num_complex::Complex;
