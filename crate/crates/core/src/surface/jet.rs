use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

use super::graph::GraphSurface;

/// The u-linear coefficients the characteristic polynomial depends on.
///
/// `phi22` and `phi33` are real; `phi23`, `phi24` and `phi34` are the
/// conjugates of the stored entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Jet7 {
    pub phi22: GaussianRational,
    pub phi32: GaussianRational,
    pub phi33: GaussianRational,
    pub phi42: GaussianRational,
    pub phi43: GaussianRational,
}

impl Jet7 {
    pub fn new(
        phi22: GaussianRational,
        phi32: GaussianRational,
        phi33: GaussianRational,
        phi42: GaussianRational,
        phi43: GaussianRational,
    ) -> Result<Self> {
        if !phi22.is_real() || !phi33.is_real() {
            return Err(Error::InvalidParameter("phi22 and phi33 must be real".into()));
        }
        Ok(Self { phi22, phi32, phi33, phi42, phi43 })
    }

    pub fn zero() -> Self {
        let z = GaussianRational::zero;
        Self { phi22: z(), phi32: z(), phi33: z(), phi42: z(), phi43: z() }
    }

    pub fn phi23(&self) -> GaussianRational {
        self.phi32.conj()
    }

    pub fn phi24(&self) -> GaussianRational {
        self.phi42.conj()
    }

    pub fn phi34(&self) -> GaussianRational {
        self.phi43.conj()
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// Smallest truncation order carrying every jet entry (`phi43` is `z^4 zb^3 u`).
pub const JET_ORDER: u32 = 8;

/// Reads the 7-jet of a class surface prenormalized at u-level 1.
pub fn jet7(m: &GraphSurface) -> Result<Jet7> {
    let n = m.order();
    if n < JET_ORDER {
        return Err(Error::OrderTooSmall { order: n, needed: JET_ORDER, what: "the 7-jet" });
    }
    if !m.phi().coeff((1, 1, 1)).is_one() {
        return Err(Error::ClassViolation("phi11 must be 1".into()));
    }
    for l in 2..=n - 2 {
        if !m.phi().coeff((l, 1, 1)).is_zero() {
            return Err(Error::NotPrenormalized { l });
        }
    }
    let c = |a, b| m.phi().coeff((a, b, 1));
    Jet7::new(c(2, 2), c(3, 2), c(3, 3), c(4, 2), c(4, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Series3;

    #[test]
    fn reads_u_linear_coefficients() {
        let n = 9;
        let g = GaussianRational::from_parts;
        let terms = vec![
            ((1, 1, 1), g(1, 1, 0, 1)),
            ((2, 2, 1), g(1, 4, 0, 1)),
            ((3, 2, 1), g(1, 1, 2, 1)),
            ((2, 3, 1), g(1, 1, -2, 1)),
            ((4, 3, 1), g(0, 1, 1, 3)),
            ((3, 4, 1), g(0, 1, -1, 3)),
            ((2, 2, 2), g(5, 1, 0, 1)),
        ];
        let m = GraphSurface::new(Series3::from_terms(n, terms).unwrap()).unwrap();
        let j = jet7(&m).unwrap();
        assert_eq!(j.phi22, g(1, 4, 0, 1));
        assert_eq!(j.phi32, g(1, 1, 2, 1));
        assert_eq!(j.phi23(), g(1, 1, -2, 1));
        assert_eq!(j.phi43, g(0, 1, 1, 3));
        assert!(j.phi33.is_zero() && j.phi42.is_zero());
    }

    #[test]
    fn requires_prenormalization() {
        let n = 9;
        let g = GaussianRational::from_int;
        let terms = vec![((1, 1, 1), g(1)), ((2, 1, 1), g(1)), ((1, 2, 1), g(1))];
        let m = GraphSurface::new(Series3::from_terms(n, terms).unwrap()).unwrap();
        assert_eq!(jet7(&m), Err(Error::NotPrenormalized { l: 2 }));
        let q = GraphSurface::new(Series3::monomial(6, (1, 1, 1), g(1))).unwrap();
        assert!(matches!(jet7(&q), Err(Error::OrderTooSmall { .. })));
    }
}
