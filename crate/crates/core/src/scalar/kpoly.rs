use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Default upper limit for the integer root search.
pub const DEFAULT_ROOT_CEILING: u64 = 10_000;

/// Polynomial in the stage index `k` with Gaussian rational coefficients.
///
/// `coeffs[i]` is the coefficient of `k^i`; trailing zeros are trimmed so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KPoly {
    coeffs: Vec<GaussianRational>,
}

impl KPoly {
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Real polynomial from rational coefficients, lowest power first.
    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(GaussianRational::real).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    /// The polynomial `k`.
    pub fn k() -> Self {
        Self::from_coeffs(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    /// `k - r` for an integer `r`.
    pub fn k_minus(r: i64) -> Self {
        Self::k() - Self::constant(GaussianRational::from_int(r))
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GaussianRational {
        self.coeffs.get(i).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Polynomial with every coefficient conjugated.
    pub fn conj(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(GaussianRational::conj).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_int(&self, x: i64) -> GaussianRational {
        self.eval(&GaussianRational::from_int(x))
    }

    /// Returns `(p / lc, lc)` where `lc` is the leading coefficient.
    pub fn make_monic(&self) -> Result<(KPoly, GaussianRational)> {
        let lc = self.leading().ok_or(Error::ZeroPolynomial)?.clone();
        let inv = lc.checked_inv().ok_or(Error::ZeroPolynomial)?;
        Ok((self.scale(&inv), lc))
    }

    /// Euclidean division over the coefficient field. Panics on a zero divisor.
    pub fn div_rem(&self, d: &KPoly) -> (KPoly, KPoly) {
        let dl = d.leading().expect("polynomial division by zero");
        let dl_inv = dl.checked_inv().expect("nonzero leading coefficient");
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (KPoly::zero(), self.clone());
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &dl_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &(&c * dc);
                }
            }
            quot[i] = c;
        }
        (KPoly::from_coeffs(quot), KPoly::from_coeffs(rem))
    }

    /// `c` with `self = c * other`, if such a constant exists and both are nonzero.
    pub fn proportionality_to(&self, other: &KPoly) -> Option<GaussianRational> {
        if self.is_zero() || other.is_zero() || self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let c = self.leading()? / other.leading()?;
        (other.scale(&c) == *self).then_some(c)
    }

    fn real_or_imag_part(&self) -> Vec<Rational> {
        let re: Vec<Rational> = self.coeffs.iter().map(|c| c.re.clone()).collect();
        if re.iter().any(|c| !c.is_zero()) {
            re
        } else {
            self.coeffs.iter().map(|c| c.im.clone()).collect()
        }
    }

    /// All integer roots `k >= 2`, using [`DEFAULT_ROOT_CEILING`].
    pub fn integer_roots_ge2(&self) -> Result<BTreeSet<i64>> {
        self.integer_roots_ge2_with_ceiling(DEFAULT_ROOT_CEILING)
    }

    /// All integer roots `k >= 2`.
    ///
    /// A real root must be a root of both the real and the imaginary coefficient
    /// polynomial, so candidates are drawn from one nonzero part: after clearing
    /// denominators and factoring out powers of `k`, a root divides the constant
    /// term and is bounded by the Fujiwara bound. Every candidate is confirmed by
    /// exact evaluation of the full polynomial. The search is complete; if the
    /// bound exceeds `ceiling` an error is returned instead of a partial answer.
    pub fn integer_roots_ge2_with_ceiling(&self, ceiling: u64) -> Result<BTreeSet<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomialRoots);
        }
        let part = self.real_or_imag_part();
        let lcm = part.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> =
            part.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        while ints.last().is_some_and(Zero::is_zero) {
            ints.pop();
        }
        let first = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let ints = &ints[first..];
        let mut roots = BTreeSet::new();
        if ints.len() < 2 {
            return Ok(roots);
        }
        let bound = fujiwara_bound(ints);
        if bound > BigInt::from(ceiling) {
            return Err(Error::RootSearchCeiling { bound: bound.to_string(), ceiling });
        }
        let limit = bound.to_i64().expect("bound below ceiling fits in i64");
        let c0 = ints[0].abs();
        for r in 2..=limit {
            if c0.is_multiple_of(&BigInt::from(r)) && self.eval_int(r).is_zero() {
                roots.insert(r);
            }
        }
        Ok(roots)
    }
}

/// Smallest integer `s` with `s^n >= t`.
fn ceil_root(t: &BigInt, n: u32) -> BigInt {
    let r = t.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) < *t {
        r + 1
    } else {
        r
    }
}

/// Upper bound `2 max |a_{n-i}/a_n|^{1/i}` on the modulus of every root
/// (the last term uses `|a_0 / (2 a_n)|`).
fn fujiwara_bound(ints: &[BigInt]) -> BigInt {
    let n = ints.len() - 1;
    let lead = ints[n].abs();
    let mut best = BigInt::one();
    for i in 1..=n {
        let mut a = ints[n - i].abs();
        let mut den = lead.clone();
        if i == n {
            den *= 2;
        }
        if a.is_zero() {
            continue;
        }
        let (q, r) = a.div_rem(&den);
        a = if r.is_zero() { q } else { q + 1 };
        best = best.max(ceil_root(&a, i as u32));
    }
    best * 2
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_real() && c.re.is_negative();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let c = if negative { -c } else { c.clone() };
            let body = if c.is_real() { c.to_string() } else { format!("({c})") };
            match (i, c.is_one()) {
                (0, _) => write!(f, "{body}")?,
                (1, true) => write!(f, "k")?,
                (1, false) => write!(f, "{body}*k")?,
                (_, true) => write!(f, "k^{i}")?,
                (_, false) => write!(f, "{body}*k^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add<&KPoly> for &KPoly {
    type Output = KPoly;
    fn add(self, o: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        KPoly::from_coeffs((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl Sub<&KPoly> for &KPoly {
    type Output = KPoly;
    fn sub(self, o: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        KPoly::from_coeffs((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl Mul<&KPoly> for &KPoly {
    type Output = KPoly;
    fn mul(self, o: &KPoly) -> KPoly {
        if self.is_zero() || o.is_zero() {
            return KPoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        KPoly::from_coeffs(out)
    }
}

impl Neg for &KPoly {
    type Output = KPoly;
    fn neg(self) -> KPoly {
        KPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<KPoly> for KPoly {
            type Output = KPoly;
            fn $m(self, o: KPoly) -> KPoly { (&self).$m(&o) }
        }
        impl $tr<&KPoly> for KPoly {
            type Output = KPoly;
            fn $m(self, o: &KPoly) -> KPoly { (&self).$m(o) }
        }
        impl $tr<KPoly> for &KPoly {
            type Output = KPoly;
            fn $m(self, o: KPoly) -> KPoly { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for KPoly {
    type Output = KPoly;
    fn neg(self) -> KPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn int_poly(c: &[i64]) -> KPoly {
        KPoly::from_coeffs(c.iter().map(|&x| GaussianRational::from_int(x)).collect())
    }

    fn c(n: i64) -> KPoly {
        KPoly::constant(GaussianRational::from_int(n))
    }

    #[test]
    fn ring_operations() {
        let km1 = KPoly::k_minus(1);
        let kp1 = KPoly::k() + c(1);
        assert_eq!(&km1 * &kp1, int_poly(&[-1, 0, 1]));
        assert!((&km1 * &KPoly::zero()).is_zero());
        // (2k^2 - 3k + 2)^2, checked against a hand expansion.
        let q = int_poly(&[2, -3, 2]);
        assert_eq!(q.pow(2), int_poly(&[4, -12, 17, -12, 4]));
        assert_eq!((&q - &q), KPoly::zero());
        assert_eq!(q.degree(), Some(2));
        assert_eq!(KPoly::zero().degree(), None);
    }

    fn example_31() -> KPoly {
        let k = KPoly::k();
        let q = int_poly(&[2, -3, 2]);
        KPoly::constant(GaussianRational::real(rat(2, 3)))
            * &k
            * (k.scale(&GaussianRational::from_int(2)) + c(3))
            * KPoly::k_minus(1)
            * q.pow(2)
    }

    #[test]
    fn evaluation() {
        assert_eq!(int_poly(&[-1, 0, 1]).eval_int(3), GaussianRational::from_int(8));
        assert_eq!(KPoly::zero().eval_int(7), GaussianRational::zero());
        // (2/3)*2*7*1*4^2 = 448/3
        assert_eq!(example_31().eval_int(2), GaussianRational::real(rat(448, 3)));
    }

    #[test]
    fn monic_normalization() {
        let (p, lc) = int_poly(&[6, 0, 3]).make_monic().unwrap();
        assert_eq!(p, int_poly(&[2, 0, 1]));
        assert_eq!(lc, GaussianRational::from_int(3));
        let (p, lc) = int_poly(&[1, 1]).make_monic().unwrap();
        assert_eq!((p, lc), (int_poly(&[1, 1]), GaussianRational::from_int(1)));
        assert_eq!(example_31().leading(), Some(&GaussianRational::real(rat(16, 3))));
        assert_eq!(KPoly::zero().make_monic(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn division() {
        let a = int_poly(&[-1, 0, 1]);
        let (q, r) = a.div_rem(&KPoly::k_minus(1));
        assert_eq!(q, int_poly(&[1, 1]));
        assert!(r.is_zero());
        let (q, r) = int_poly(&[1, 0, 1]).div_rem(&int_poly(&[0, 2]));
        assert_eq!(q, KPoly::k().scale(&GaussianRational::real(rat(1, 2))));
        assert_eq!(r, c(1));
    }

    #[test]
    fn integer_roots() {
        let p = KPoly::k_minus(2) * KPoly::k_minus(5) * int_poly(&[1, 0, 1]);
        assert_eq!(p.integer_roots_ge2().unwrap(), BTreeSet::from([2, 5]));
        assert!(int_poly(&[1, 0, 1]).integer_roots_ge2().unwrap().is_empty());
        assert_eq!(KPoly::zero().integer_roots_ge2(), Err(Error::ZeroPolynomialRoots));

        // -221184 i (k-1)((k-1)^2-16)((k-1)^2-4)^2, the m = 2 member of the M_m family
        let s = KPoly::k_minus(1);
        let p = (&s * &(&s.pow(2) - &c(16)) * (&s.pow(2) - &c(4)).pow(2))
            .scale(&GaussianRational::new(rat(0, 1), rat(-221184, 1)));
        assert_eq!(p.integer_roots_ge2().unwrap(), BTreeSet::from([3, 5]));

        // roots at 0 and 1 are not reported; a factor of k is handled
        let p = KPoly::k() * KPoly::k_minus(1) * KPoly::k_minus(12);
        assert_eq!(p.integer_roots_ge2().unwrap(), BTreeSet::from([12]));
    }

    #[test]
    fn root_ceiling_is_reported() {
        let p = KPoly::k_minus(20_000);
        assert!(matches!(p.integer_roots_ge2(), Err(Error::RootSearchCeiling { .. })));
        assert_eq!(p.integer_roots_ge2_with_ceiling(100_000).unwrap(), BTreeSet::from([20_000]));
    }

    #[test]
    fn complex_coefficients_need_both_parts_to_vanish() {
        // (k - 3) + i (k - 4) has no real root
        let p = KPoly::from_coeffs(vec![
            GaussianRational::from_parts(-3, 1, -4, 1),
            GaussianRational::from_parts(1, 1, 1, 1),
        ]);
        assert!(p.integer_roots_ge2().unwrap().is_empty());
        let p = KPoly::k_minus(3).scale(&GaussianRational::from_parts(2, 1, 1, 1));
        assert_eq!(p.integer_roots_ge2().unwrap(), BTreeSet::from([3]));
    }

    #[test]
    fn proportionality() {
        let p = int_poly(&[1, 2, 3]);
        let q = p.scale(&GaussianRational::from_parts(0, 1, 5, 2));
        assert_eq!(q.proportionality_to(&p), Some(GaussianRational::from_parts(0, 1, 5, 2)));
        assert_eq!(q.proportionality_to(&int_poly(&[1, 2, 4])), None);
    }

    #[test]
    fn display() {
        assert_eq!(int_poly(&[-1, 0, 1]).to_string(), "k^2 - 1");
        assert_eq!(int_poly(&[0, -2, 0, 3]).to_string(), "3*k^3 - 2*k");
        assert_eq!(KPoly::zero().to_string(), "0");
    }
}
