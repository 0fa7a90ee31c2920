use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};
use crate::series::Series3;
use crate::surface::GraphSurface;

/// The linear map `(z, w) -> (alpha z, s w)` with `|alpha| = 1`, `s != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    pub alpha: GaussianRational,
    #[serde(with = "crate::scalar::rational_string")]
    pub s: Rational,
}

impl GroupElement {
    pub fn new(alpha: GaussianRational, s: Rational) -> Result<Self> {
        if !alpha.norm_sqr().is_one() {
            return Err(Error::InvalidGroupElement(format!("|alpha|^2 = {} is not 1", alpha.norm_sqr())));
        }
        if s.is_zero() {
            return Err(Error::InvalidGroupElement("s must be nonzero".into()));
        }
        Ok(Self { alpha, s })
    }

    pub fn identity() -> Self {
        Self { alpha: GaussianRational::one(), s: Rational::one() }
    }
}

/// The image of `m` under `(z, w) -> (alpha z, s w)`:
/// `phi'_abc = phi_abc conj(alpha)^a alpha^b s^(1-c)`.
pub fn apply_group_action(m: &GraphSurface, g: &GroupElement) -> Result<GraphSurface> {
    let n = m.order();
    let ab = g.alpha.conj();
    let mut out = Series3::zero(n);
    for ((a, b, c), v) in m.phi().terms() {
        let s_pow =
            if c == 0 { GaussianRational::real(g.s.clone()) } else { GaussianRational::real(g.s.pow(1 - c as i32)) };
        let coeff = &(&(v * &ab.pow(a)) * &g.alpha.pow(b)) * &s_pow;
        out.add_term((a, b, c), &coeff);
    }
    GraphSurface::new(out)
}
