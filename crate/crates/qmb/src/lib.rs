//! q-Mellin–Barnes integrals on the unit circle, their residue sums, the
//! Askey–Wilson moments, and a catalog of checkable q-series identities
//! with a constrained parameter sampler.

pub mod awmoments;
pub mod contour;
pub mod identities;
pub mod sampler;
