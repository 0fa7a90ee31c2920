//! Truncated formal power series.
//!
//! [`Series3`] holds real-analytic data in `(z, zb, u)`, [`HoloSeries2`] holds
//! holomorphic data in `(z, w)`, [`FormalMap`] is a pair of holomorphic
//! increments and [`UniSeries`] is a dense one-variable series used by the
//! example generators. Every series carries a truncation order `N` on total
//! degree and all operations drop terms above it.

mod holo;
mod reversion;
mod series3;
mod uni;

pub use holo::{compose_maps, invert_map, FormalMap, HoloSeries2};
pub(crate) use reversion::check_linear_part;
pub use reversion::invert_real_triple;
pub use series3::{degree, graded_key, ArithOp, Series3};
pub use uni::{uni_compose, uni_function, UniFunction, UniSeries};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Truncated commutative ring a holomorphic series can be evaluated in.
pub trait TruncRing: Clone {
    fn order(&self) -> u32;
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn add_scaled_assign(&mut self, other: &Self, c: &GaussianRational);
    fn has_constant_term(&self) -> bool;
}

/// Evaluates `h(z_val, w_val) = sum h_lk z_val^l w_val^k`.
///
/// Both arguments must lack a constant term so that truncation commutes with
/// evaluation.
pub fn eval_holo<R: TruncRing>(h: &HoloSeries2, z_val: &R, w_val: &R) -> Result<R> {
    if z_val.order() != h.order() || w_val.order() != h.order() {
        return Err(Error::OrderMismatch { left: h.order(), right: z_val.order().min(w_val.order()) });
    }
    if z_val.has_constant_term() || w_val.has_constant_term() {
        return Err(Error::NonzeroConstant);
    }
    let max_l = h.terms().map(|((l, _), _)| l).max().unwrap_or(0);
    let max_k = h.terms().map(|((_, k), _)| k).max().unwrap_or(0);
    let z_pows = ring_powers(z_val, max_l);
    let w_pows = ring_powers(w_val, max_k);
    // sum over k of w^k * (sum over l of h_lk z^l)
    let mut out = z_val.zero_like();
    for k in 0..=max_k {
        let mut inner = z_val.zero_like();
        let mut any = false;
        for l in 0..=max_l {
            if let Some(c) = h.coeff_ref((l, k)) {
                inner.add_scaled_assign(&z_pows[l as usize], c);
                any = true;
            }
        }
        if any {
            out.add_scaled_assign(&inner.ring_mul(&w_pows[k as usize]), &GaussianRational::from_int(1));
        }
    }
    Ok(out)
}

fn ring_powers<R: TruncRing>(s: &R, e: u32) -> Vec<R> {
    let mut v = vec![s.one_like()];
    for i in 1..=e as usize {
        let next = v[i - 1].ring_mul(s);
        v.push(next);
    }
    v
}
