use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

use super::{eval_holo, TruncRing};

/// Sparse holomorphic series `sum h_lk z^l w^k` truncated at `l + k <= order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloSeries2 {
    order: u32,
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl HoloSeries2 {
    pub fn zero(order: u32) -> Self {
        Self { order, terms: BTreeMap::new() }
    }

    pub fn one(order: u32) -> Self {
        Self::monomial(order, (0, 0), GaussianRational::one())
    }

    /// `c z^l w^k`, dropped above the truncation order.
    pub fn monomial(order: u32, lk: (u32, u32), c: GaussianRational) -> Self {
        let mut h = Self::zero(order);
        h.add_term(lk, &c);
        h
    }

    pub fn z(order: u32) -> Self {
        Self::monomial(order, (1, 0), GaussianRational::one())
    }

    pub fn w(order: u32) -> Self {
        Self::monomial(order, (0, 1), GaussianRational::one())
    }

    pub fn from_terms<I>(order: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), GaussianRational)>,
    {
        let mut h = Self::zero(order);
        for ((l, k), c) in terms {
            if l + k > order {
                return Err(Error::BeyondTruncation { a: l, b: 0, c: k, order });
            }
            h.add_term((l, k), &c);
        }
        Ok(h)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &GaussianRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, lk: (u32, u32)) -> GaussianRational {
        self.terms.get(&lk).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeff_ref(&self, lk: (u32, u32)) -> Option<&GaussianRational> {
        self.terms.get(&lk)
    }

    pub fn add_term(&mut self, lk: (u32, u32), c: &GaussianRational) {
        if lk.0 + lk.1 > self.order || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lk).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lk);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order, "mismatched truncation orders");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.order);
        for (e, x) in &self.terms {
            out.add_term(*e, &(x * c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order, "mismatched truncation orders");
        let mut out = Self::zero(self.order);
        for ((l1, k1), a) in &self.terms {
            for ((l2, k2), b) in &o.terms {
                out.add_term((l1 + l2, k1 + k2), &(a * b));
            }
        }
        out
    }

    /// Same terms, stored at order `n <= order`.
    pub fn truncate(&self, n: u32) -> Self {
        let n = n.min(self.order);
        Self {
            order: n,
            terms: self.terms.iter().filter(|((l, k), _)| l + k <= n).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Composition `h(z_repl, w_repl)`.
    pub fn substitute(&self, z_repl: &HoloSeries2, w_repl: &HoloSeries2) -> Result<HoloSeries2> {
        eval_holo(self, z_repl, w_repl)
    }

    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|(l, k)| (l + k, *k, *l));
        keys.iter()
            .map(|&(l, k)| {
                let mut f = vec![format!("({})", self.terms[&(l, k)])];
                for (name, p) in [("z", l), ("w", k)] {
                    match p {
                        0 => {}
                        1 => f.push(name.into()),
                        _ => f.push(format!("{name}^{p}")),
                    }
                }
                f.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for HoloSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl TruncRing for HoloSeries2 {
    fn order(&self) -> u32 {
        self.order
    }
    fn one_like(&self) -> Self {
        Self::one(self.order)
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.order)
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn add_scaled_assign(&mut self, o: &Self, c: &GaussianRational) {
        for (e, x) in &o.terms {
            self.add_term(*e, &(x * c));
        }
    }
    fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&(0, 0))
    }
}

/// The map `(z, w) -> (z + f(z, w), w + g(z, w))`.
///
/// `f` has no constant and no `z` term, `g` has no constant, no `w` and no `z`
/// term. The linear part is therefore `(z + f01 w, w)`: it preserves the real
/// tangent plane `Im w = 0` and is unipotent, so these maps form a group under
/// composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalMap {
    f: HoloSeries2,
    g: HoloSeries2,
}

impl FormalMap {
    pub fn new(f: HoloSeries2, g: HoloSeries2) -> Result<Self> {
        if f.order != g.order {
            return Err(Error::OrderMismatch { left: f.order, right: g.order });
        }
        for (name, h, banned) in [("f", &f, [(0, 0), (1, 0)]), ("g", &g, [(0, 0), (0, 1)])] {
            for lk in banned {
                if h.terms.contains_key(&lk) {
                    return Err(Error::InvalidMap(format!("{name} must not contain z^{} w^{}", lk.0, lk.1)));
                }
            }
        }
        if g.terms.contains_key(&(1, 0)) {
            return Err(Error::InvalidMap(
                "g must not contain a z term (the tangent plane Im w = 0 is preserved)".into(),
            ));
        }
        Ok(Self { f, g })
    }

    pub fn identity(order: u32) -> Self {
        Self { f: HoloSeries2::zero(order), g: HoloSeries2::zero(order) }
    }

    pub fn order(&self) -> u32 {
        self.f.order
    }

    pub fn f(&self) -> &HoloSeries2 {
        &self.f
    }

    pub fn g(&self) -> &HoloSeries2 {
        &self.g
    }

    pub fn is_identity(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    /// Full components `(z + f, w + g)`.
    pub fn components(&self) -> (HoloSeries2, HoloSeries2) {
        let n = self.order();
        (HoloSeries2::z(n).add(&self.f), HoloSeries2::w(n).add(&self.g))
    }

    pub fn truncate(&self, n: u32) -> FormalMap {
        FormalMap { f: self.f.truncate(n), g: self.g.truncate(n) }
    }
}

/// The composite `(z, w) -> outer(inner(z, w))`.
pub fn compose_maps(outer: &FormalMap, inner: &FormalMap) -> Result<FormalMap> {
    if outer.order() != inner.order() {
        return Err(Error::OrderMismatch { left: outer.order(), right: inner.order() });
    }
    let (zi, wi) = inner.components();
    let f = inner.f.add(&outer.f.substitute(&zi, &wi)?);
    let g = inner.g.add(&outer.g.substitute(&zi, &wi)?);
    FormalMap::new(f, g)
}

/// The inverse map, by fixed-point iteration on `p = -f(z + p, w + q)`,
/// `q = -g(z + p, w + q)`.
pub fn invert_map(m: &FormalMap) -> Result<FormalMap> {
    let n = m.order();
    let mut p = HoloSeries2::zero(n);
    let mut q = HoloSeries2::zero(n);
    let passes = 2 * n as usize + 4;
    for _ in 0..passes {
        let z = HoloSeries2::z(n).add(&p);
        let w = HoloSeries2::w(n).add(&q);
        let p_next = m.f.substitute(&z, &w)?.scale(&-GaussianRational::one());
        let q_next = m.g.substitute(&z, &w)?.scale(&-GaussianRational::one());
        if p_next == p && q_next == q {
            return FormalMap::new(p, q);
        }
        p = p_next;
        q = q_next;
    }
    Err(Error::ReversionStalled(passes))
}
