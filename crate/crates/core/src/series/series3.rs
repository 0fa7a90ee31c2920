use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Exp3, Result};
use crate::scalar::{rat, GaussianRational, Rational};

use super::TruncRing;

/// Total degree of `z^a zb^b u^c`.
pub fn degree(e: Exp3) -> u32 {
    e.0 + e.1 + e.2
}

/// Sort key of the graded order used for solving and reporting: total degree,
/// then power of `u`, then power of `z`.
pub fn graded_key(e: Exp3) -> (u32, u32, u32, u32) {
    (degree(e), e.2, e.0, e.1)
}

/// Arithmetic selector for [`Series3::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Sparse power series in `(z, zb, u)` truncated at total degree `order`.
///
/// Zero coefficients are never stored, so equality of series with the same
/// order is equality of their term maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series3 {
    order: u32,
    terms: BTreeMap<Exp3, GaussianRational>,
}

impl Series3 {
    pub fn zero(order: u32) -> Self {
        Self { order, terms: BTreeMap::new() }
    }

    pub fn constant(order: u32, c: GaussianRational) -> Self {
        Self::monomial(order, (0, 0, 0), c)
    }

    pub fn one(order: u32) -> Self {
        Self::constant(order, GaussianRational::one())
    }

    /// `c z^a zb^b u^c`; terms above the truncation order are dropped.
    pub fn monomial(order: u32, e: Exp3, c: GaussianRational) -> Self {
        let mut s = Self::zero(order);
        if degree(e) <= order && !c.is_zero() {
            s.terms.insert(e, c);
        }
        s
    }

    pub fn z(order: u32) -> Self {
        Self::monomial(order, (1, 0, 0), GaussianRational::one())
    }

    pub fn zb(order: u32) -> Self {
        Self::monomial(order, (0, 1, 0), GaussianRational::one())
    }

    pub fn u(order: u32) -> Self {
        Self::monomial(order, (0, 0, 1), GaussianRational::one())
    }

    /// Builds a series from explicit terms, summing repeated exponents.
    pub fn from_terms<I>(order: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exp3, GaussianRational)>,
    {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            if degree(e) > order {
                return Err(Error::BeyondTruncation { a: e.0, b: e.1, c: e.2, order });
            }
            s.add_term(e, &c);
        }
        Ok(s)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp3, &GaussianRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Terms in graded order (see [`graded_key`]).
    pub fn graded_terms(&self) -> Vec<(Exp3, &GaussianRational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(e, _)| graded_key(*e));
        v
    }

    /// Coefficient of `z^a zb^b u^c`, zero if absent.
    pub fn coeff(&self, e: Exp3) -> GaussianRational {
        self.terms.get(&e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeff_ref(&self, e: Exp3) -> Option<&GaussianRational> {
        self.terms.get(&e)
    }

    /// Coefficient with a range check against the truncation order.
    pub fn checked_coeff(&self, e: Exp3) -> Result<GaussianRational> {
        if degree(e) > self.order {
            return Err(Error::BeyondTruncation { a: e.0, b: e.1, c: e.2, order: self.order });
        }
        Ok(self.coeff(e))
    }

    /// Adds `c` to the coefficient of `e` (ignored above the truncation order).
    pub fn add_term(&mut self, e: Exp3, c: &GaussianRational) {
        if degree(e) > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Series3, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &other.terms {
            self.add_term(*e, &(x * c));
        }
    }

    fn check_order(&self, other: &Series3) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    /// Ring operation with a truncation-order check.
    pub fn arith(&self, other: &Series3, op: ArithOp) -> Result<Series3> {
        self.check_order(other)?;
        Ok(match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
        })
    }

    /// Sum. Panics on mismatched orders; use [`Series3::arith`] to get an error.
    pub fn add(&self, other: &Series3) -> Series3 {
        assert_eq!(self.order, other.order, "mismatched truncation orders");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Series3) -> Series3 {
        assert_eq!(self.order, other.order, "mismatched truncation orders");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &-c);
        }
        out
    }

    pub fn neg(&self) -> Series3 {
        self.scale(&-GaussianRational::one())
    }

    /// Truncated product. Panics on mismatched orders.
    pub fn mul(&self, other: &Series3) -> Series3 {
        assert_eq!(self.order, other.order, "mismatched truncation orders");
        let n = self.order;
        let mut rhs: Vec<(u32, Exp3, &GaussianRational)> =
            other.terms.iter().map(|(e, c)| (degree(*e), *e, c)).collect();
        rhs.sort_by_key(|t| t.0);
        let mut acc: HashMap<Exp3, GaussianRational> = HashMap::new();
        for (e1, c1) in &self.terms {
            let d1 = degree(*e1);
            for (d2, e2, c2) in &rhs {
                if d1 + d2 > n {
                    break;
                }
                let e = (e1.0 + e2.0, e1.1 + e2.1, e1.2 + e2.2);
                let p = c1 * *c2;
                match acc.entry(e) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(p);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &p,
                }
            }
        }
        Series3 { order: n, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Series3 {
        if c.is_zero() {
            return Series3::zero(self.order);
        }
        Series3 { order: self.order, terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Series3 {
        self.scale(&GaussianRational::real(r.clone()))
    }

    pub fn pow(&self, e: u32) -> Series3 {
        (0..e).fold(Series3::one(self.order), |acc, _| acc.mul(self))
    }

    /// Same terms up to degree `n`, stored with truncation order `n <= order`.
    pub fn truncate(&self, n: u32) -> Series3 {
        let n = n.min(self.order);
        Series3 {
            order: n,
            terms: self.terms.iter().filter(|(e, _)| degree(**e) <= n).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// The same series viewed at another truncation order. Raising the order
    /// asserts that the missing higher terms are zero, so callers only do that
    /// for series known exactly (polynomials).
    pub fn with_order(&self, n: u32) -> Series3 {
        if n <= self.order {
            self.truncate(n)
        } else {
            Series3 { order: n, terms: self.terms.clone() }
        }
    }

    /// Terms whose exponents satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(Exp3) -> bool) -> Series3 {
        Series3 {
            order: self.order,
            terms: self.terms.iter().filter(|(e, _)| keep(**e)).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Lowest total degree of a stored term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(*e)).min()
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff((0, 0, 0))
    }

    /// Swaps `z` and `zb` and conjugates every coefficient.
    pub fn hermitian_conjugate(&self) -> Series3 {
        Series3 { order: self.order, terms: self.terms.iter().map(|((a, b, c), x)| ((*b, *a, *c), x.conj())).collect() }
    }

    pub fn is_hermitian(&self) -> bool {
        self.first_non_hermitian().is_none()
    }

    /// First monomial (graded order) whose conjugate partner does not match.
    pub fn first_non_hermitian(&self) -> Option<Exp3> {
        self.graded_terms().into_iter().map(|(e, _)| e).find(|&(a, b, c)| {
            let partner = self.coeff_ref((b, a, c));
            partner.map(GaussianRational::conj) != Some(self.coeff((a, b, c)))
        })
    }

    /// `(h1, h2)` with `self = h1 + i*h2` and both Hermitian.
    pub fn split_real_imag(&self) -> (Series3, Series3) {
        let conj = self.hermitian_conjugate();
        let half = GaussianRational::real(rat(1, 2));
        let h1 = self.add(&conj).scale(&half);
        // (s - conj) / (2i) = -i (s - conj) / 2
        let h2 = self.sub(&conj).scale(&GaussianRational::from_parts(0, 1, -1, 2));
        (h1, h2)
    }

    /// `2 Re` of a series: `self + hermitian_conjugate(self)`.
    pub fn twice_real_part(&self) -> Series3 {
        self.add(&self.hermitian_conjugate())
    }

    fn derivative(&self, which: usize) -> Series3 {
        let mut out = Series3::zero(self.order);
        for (e, c) in &self.terms {
            let p = [e.0, e.1, e.2];
            if p[which] == 0 {
                continue;
            }
            let mut q = p;
            q[which] -= 1;
            out.terms.insert((q[0], q[1], q[2]), c.scale(&rat(p[which] as i64, 1)));
        }
        out
    }

    /// Partial derivative in `z`. The top-degree part of the result is not
    /// determined by the truncated input; callers multiply it by series without
    /// constant term before using that part.
    pub fn partial_z(&self) -> Series3 {
        self.derivative(0)
    }

    pub fn partial_zb(&self) -> Series3 {
        self.derivative(1)
    }

    pub fn partial_u(&self) -> Series3 {
        self.derivative(2)
    }

    /// Composition `s(z_repl, zb_repl, u_repl)` truncated at the common order.
    pub fn substitute(&self, z_repl: &Series3, zb_repl: &Series3, u_repl: &Series3) -> Result<Series3> {
        for r in [z_repl, zb_repl, u_repl] {
            self.check_order(r)?;
            if !r.constant_term().is_zero() {
                return Err(Error::NonzeroConstant);
            }
        }
        let n = self.order;
        // group terms by (a, b) and expand the u-part first
        let mut groups: BTreeMap<(u32, u32), Vec<(u32, &GaussianRational)>> = BTreeMap::new();
        for ((a, b, c), x) in &self.terms {
            groups.entry((*a, *b)).or_default().push((*c, x));
        }
        let max_c = self.terms.keys().map(|e| e.2).max().unwrap_or(0);
        let u_pows = powers(u_repl, max_c);
        let mut zz: HashMap<(u32, u32), Series3> = HashMap::new();
        let mut out = Series3::zero(n);
        for ((a, b), cs) in groups {
            let mut inner = Series3::zero(n);
            for (c, x) in cs {
                inner.add_scaled(&u_pows[c as usize], x);
            }
            if inner.is_zero() {
                continue;
            }
            let p = zz_power(&mut zz, z_repl, zb_repl, a, b);
            out = out.add(&p.mul(&inner));
        }
        Ok(out)
    }

    /// Readable polynomial text in the CLI expression language.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.graded_terms() {
            let mut factors = Vec::new();
            if !c.is_one() || degree(e) == 0 {
                factors.push(expr_coeff(c));
            }
            for (name, p) in [("z", e.0), ("zb", e.1), ("u", e.2)] {
                match p {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{p}")),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

fn expr_coeff(c: &GaussianRational) -> String {
    let part = |r: &Rational| format!("({r})");
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => part(&c.re),
        (true, false) => format!("{}*i", part(&c.im)),
        (false, false) => format!("({}+{}*i)", part(&c.re), part(&c.im)),
    }
}

/// `[1, s, s^2, ..., s^e]`.
pub(crate) fn powers(s: &Series3, e: u32) -> Vec<Series3> {
    let mut v = vec![Series3::one(s.order)];
    for i in 1..=e as usize {
        let next = v[i - 1].mul(s);
        v.push(next);
    }
    v
}

fn zz_power<'a>(memo: &'a mut HashMap<(u32, u32), Series3>, z: &Series3, zb: &Series3, a: u32, b: u32) -> &'a Series3 {
    if !memo.contains_key(&(a, b)) {
        let v = match (a, b) {
            (0, 0) => Series3::one(z.order),
            (_, 0) => zz_power(memo, z, zb, a - 1, 0).mul(z),
            _ => zz_power(memo, z, zb, a, b - 1).mul(zb),
        };
        memo.insert((a, b), v);
    }
    &memo[&(a, b)]
}

impl TruncRing for Series3 {
    fn order(&self) -> u32 {
        self.order
    }
    fn one_like(&self) -> Self {
        Series3::one(self.order)
    }
    fn zero_like(&self) -> Self {
        Series3::zero(self.order)
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn add_scaled_assign(&mut self, o: &Self, c: &GaussianRational) {
        self.add_scaled(o, c)
    }
    fn has_constant_term(&self) -> bool {
        !self.constant_term().is_zero()
    }
}

impl fmt::Display for Series3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}
