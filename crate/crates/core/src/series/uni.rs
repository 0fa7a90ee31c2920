use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat, GaussianRational, Rational};

/// Dense one-variable series `sum c_n x^n`, `n <= order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<GaussianRational>,
}

/// Elementary functions available as Maclaurin series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniFunction {
    Arcsin,
    Tan,
    Exp,
    /// `log(1 + x)`
    Log1p,
    /// `(1 + x)^r`
    PowRational(Rational),
}

impl UniSeries {
    pub fn zero(order: u32) -> Self {
        Self { coeffs: vec![GaussianRational::zero(); order as usize + 1] }
    }

    pub fn one(order: u32) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = GaussianRational::one();
        s
    }

    /// The series `x`.
    pub fn x(order: u32) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = GaussianRational::one();
        }
        s
    }

    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn from_coeffs(order: u32, coeffs: Vec<GaussianRational>) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in coeffs.into_iter().enumerate().take(order as usize + 1) {
            s.coeffs[i] = c;
        }
        s
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: u32) -> GaussianRational {
        self.coeffs.get(n as usize).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn set_coeff(&mut self, n: u32, c: GaussianRational) {
        if let Some(slot) = self.coeffs.get_mut(n as usize) {
            *slot = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::from_coeffs(n, (0..=n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::from_coeffs(n, (0..=n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order()) as usize;
        let mut out = vec![GaussianRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += &(a * b);
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].checked_inv().ok_or(Error::DivisionByZero)?;
        let n = self.coeffs.len();
        let mut out = vec![GaussianRational::zero(); n];
        out[0] = c0.clone();
        for i in 1..n {
            let mut acc = GaussianRational::zero();
            for j in 1..=i {
                acc += &(&self.coeffs[j] * &out[i - j]);
            }
            out[i] = -(&acc * &c0);
        }
        Ok(Self { coeffs: out })
    }

    /// `x -> a x`.
    pub fn rescale_variable(&self, a: &GaussianRational) -> Self {
        let mut p = GaussianRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &p);
            p = &p * a;
        }
        Self { coeffs: out }
    }
}

/// Maclaurin series of `kind` up to `x^order`.
pub fn uni_function(kind: &UniFunction, order: u32) -> UniSeries {
    let n = order as usize;
    let mut c = vec![GaussianRational::zero(); n + 1];
    match kind {
        UniFunction::Exp => {
            let mut f = rat(1, 1);
            for (i, slot) in c.iter_mut().enumerate() {
                if i > 0 {
                    f /= rat(i as i64, 1);
                }
                *slot = GaussianRational::real(f.clone());
            }
        }
        UniFunction::Log1p => {
            for (i, slot) in c.iter_mut().enumerate().skip(1) {
                let sign = if i % 2 == 1 { 1 } else { -1 };
                *slot = GaussianRational::real(rat(sign, i as i64));
            }
        }
        UniFunction::Arcsin => {
            // (2j)! / (4^j (j!)^2 (2j+1)) for x^(2j+1)
            let mut central = rat(1, 1);
            for j in 0.. {
                let i = 2 * j + 1;
                if i > n {
                    break;
                }
                if j > 0 {
                    central *= rat((2 * j - 1) as i64, (2 * j) as i64);
                }
                c[i] = GaussianRational::real(&central / rat(i as i64, 1));
            }
        }
        UniFunction::Tan => {
            // t' = 1 + t^2, t(0) = 0
            let mut t = UniSeries::zero(order);
            for i in 1..=n {
                let sq = t.mul(&t);
                let rhs = if i == 1 { GaussianRational::one() } else { sq.coeff(i as u32 - 1) };
                t.coeffs[i] = rhs.scale(&rat(1, i as i64));
            }
            return t;
        }
        UniFunction::PowRational(r) => {
            // binomial coefficients C(r, i)
            let mut b = rat(1, 1);
            for (i, slot) in c.iter_mut().enumerate() {
                if i > 0 {
                    b = b * (r - rat(i as i64 - 1, 1)) / rat(i as i64, 1);
                }
                *slot = GaussianRational::real(b.clone());
            }
        }
    }
    UniSeries { coeffs: c }
}

/// `outer(inner(x))`; `inner` must have zero constant term.
pub fn uni_compose(outer: &UniSeries, inner: &UniSeries) -> Result<UniSeries> {
    if !inner.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstant);
    }
    let n = outer.order().min(inner.order());
    let inner = UniSeries::from_coeffs(n, inner.coeffs.clone());
    // Horner: (((c_n) y + c_{n-1}) y + ...) + c_0
    let mut acc = UniSeries::zero(n);
    for i in (0..=n).rev() {
        acc = acc.mul(&inner);
        acc.coeffs[0] += &outer.coeff(i);
    }
    Ok(acc)
}
