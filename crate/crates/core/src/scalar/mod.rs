//! Exact scalars: big rationals, Gaussian rationals and polynomials in the
//! stage index `k`.

mod gaussian;
mod kpoly;
mod rational;

pub use gaussian::GaussianRational;
pub use kpoly::{KPoly, DEFAULT_ROOT_CEILING};
pub use rational::{parse_rational, rat, rational_sqrt, Rational};

/// Serde adapter writing a [`Rational`] as its exact `"p/q"` string.
pub mod rational_string {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
