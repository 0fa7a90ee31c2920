//! The stage matrices over polynomials in `k`, the characteristic polynomial
//! and the resonance set.

pub mod displayed;
mod kmatrix;
mod matrices;

pub use kmatrix::{det, det_scalar, KMatrix};
pub use matrices::{char_poly, char_poly_with_ceiling, matrix_a, matrix_b, ResonanceReport, A_COLS, A_ROWS, B_COLS};
