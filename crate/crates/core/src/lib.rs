//! Exact formal normal forms for real hypersurfaces in C^2 that are of
//! infinite type at the origin with a Levi form vanishing to first order.
//!
//! A hypersurface is the graph `Im w = phi(z, zb, Re w)` of a truncated
//! Hermitian power series. The crate brings such a graph to normal form by
//! exact stage-by-stage linear algebra, predicts the stages at which this is
//! obstructed (resonances) from a degree-7 polynomial in the stage index, and
//! generates the classical example families.
//!
//! All arithmetic is over Gaussian rationals; no floating point is used.

pub mod error;
pub mod families;
pub mod linalg;
pub mod normalizer;
pub mod random;
pub mod resonance;
pub mod scalar;
pub mod selftest;
pub mod series;
pub mod surface;

pub use error::{Error, Exp3, Result};
