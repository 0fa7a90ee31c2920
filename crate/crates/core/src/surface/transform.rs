use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Exp3, Result};
use crate::scalar::GaussianRational;
use crate::series::{eval_holo, graded_key, invert_real_triple, FormalMap, Series3};

use super::graph::GraphSurface;

/// The map written in the parametrization `w = u + i phi` of the source.
struct Lifted {
    z1: Series3,
    z1b: Series3,
    u1: Series3,
    v1: Series3,
}

fn check_orders(m: &GraphSurface, map: &FormalMap) -> Result<()> {
    if m.order() != map.order() {
        return Err(Error::OrderMismatch { left: m.order(), right: map.order() });
    }
    Ok(())
}

fn lift(m: &GraphSurface, map: &FormalMap) -> Result<Lifted> {
    check_orders(m, map)?;
    let n = m.order();
    let z = Series3::z(n);
    let w = Series3::u(n).add(&m.phi().scale(&GaussianRational::i()));
    let z1 = z.add(&eval_holo(map.f(), &z, &w)?);
    let w1 = w.add(&eval_holo(map.g(), &z, &w)?);
    let (u1, v1) = w1.split_real_imag();
    let z1b = z1.hermitian_conjugate();
    Ok(Lifted { z1, z1b, u1, v1 })
}

/// The image of `m` under `map`: the graph `phi'` with
/// `Im W = phi'(Z, conj Z, Re W)` on the image of `m`.
///
/// `phi'` is found by a triangular solve of `phi'(z1, conj z1, u1) = v1`:
/// in the graded order every product `z1^a conj(z1)^b u1^c` equals its
/// leading monomial plus strictly later terms, so each coefficient of
/// `phi'` is read off the current residual in turn.
pub fn transform(m: &GraphSurface, map: &FormalMap) -> Result<GraphSurface> {
    let l = lift(m, map)?;
    crate::series::check_linear_part(&l.z1, &l.u1)?;
    let n = m.order();
    let mut exps: Vec<Exp3> = Vec::new();
    for d in 0..=n {
        for c in 0..=d {
            for a in 0..=d - c {
                exps.push((a, d - c - a, c));
            }
        }
    }
    exps.sort_by_key(|e| graded_key(*e));

    let mut residual = l.v1.clone();
    let mut phi = Series3::zero(n);
    let mut memo: HashMap<Exp3, Series3> = HashMap::new();
    for e in exps {
        let coef = residual.coeff(e);
        if coef.is_zero() {
            continue;
        }
        let p = product_power(&mut memo, &l, e);
        residual.add_scaled(p, &-coef.clone());
        phi.add_term(e, &coef);
    }
    debug_assert!(residual.is_zero());
    GraphSurface::new(phi)
}

/// `z1^a conj(z1)^b u1^c`, memoized for one transform call.
fn product_power<'a>(memo: &'a mut HashMap<Exp3, Series3>, l: &Lifted, e: Exp3) -> &'a Series3 {
    if !memo.contains_key(&e) {
        let (a, b, c) = e;
        let v = if c > 0 {
            product_power(memo, l, (a, b, c - 1)).mul(&l.u1)
        } else if b > 0 {
            product_power(memo, l, (a, b - 1, 0)).mul(&l.z1b)
        } else if a > 0 {
            product_power(memo, l, (a - 1, 0, 0)).mul(&l.z1)
        } else {
            Series3::one(l.z1.order())
        };
        memo.insert(e, v);
    }
    &memo[&e]
}

/// The same image computed by explicit reversion: `(Z, U)` inverts
/// `(z1, u1)` and `phi' = v1(Z, conj Z, U)`.
pub fn transform_by_reversion(m: &GraphSurface, map: &FormalMap) -> Result<GraphSurface> {
    let l = lift(m, map)?;
    let (big_z, big_u) = invert_real_triple(&l.z1, &l.u1)?;
    GraphSurface::new(l.v1.substitute(&big_z, &big_z.hermitian_conjugate(), &big_u)?)
}

/// `Im G - phi_target(F, conj F, Re G)` along `w = u + i phi`; zero exactly
/// when `map` sends `m` into `target` to the truncation order.
pub fn map_defect(m: &GraphSurface, map: &FormalMap, target: &GraphSurface) -> Result<Series3> {
    if target.order() != m.order() {
        return Err(Error::OrderMismatch { left: m.order(), right: target.order() });
    }
    let l = lift(m, map)?;
    Ok(l.v1.sub(&target.phi().substitute(&l.z1, &l.z1b, &l.u1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::series::HoloSeries2;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn quadric(n: u32) -> GraphSurface {
        GraphSurface::new(Series3::monomial(n, (1, 1, 1), g(1))).unwrap()
    }

    fn holo(n: u32, terms: &[((u32, u32), GaussianRational)]) -> HoloSeries2 {
        HoloSeries2::from_terms(n, terms.iter().cloned()).unwrap()
    }

    #[test]
    fn identity_map_fixes_surface() {
        let q = quadric(7);
        assert_eq!(transform(&q, &FormalMap::identity(7)).unwrap(), q);
        assert!(map_defect(&q, &FormalMap::identity(7), &q).unwrap().is_zero());
    }

    #[test]
    fn level_one_prenormalizing_step() {
        // phi = |z|^2 u + (z^2 zb + z zb^2) u; the map z + z^2 removes phi_21
        let n = 7;
        let m = GraphSurface::new(
            Series3::from_terms(n, [((1, 1, 1), g(1)), ((2, 1, 1), g(1)), ((1, 2, 1), g(1))]).unwrap(),
        )
        .unwrap();
        let map = FormalMap::new(holo(n, &[((2, 0), g(1))]), HoloSeries2::zero(n)).unwrap();
        let image = transform(&m, &map).unwrap();
        assert!(image.phi().coeff((2, 1, 1)).is_zero());
        assert_eq!(image.phi().coeff((1, 1, 1)), g(1));
        assert!(map_defect(&m, &map, &image).unwrap().is_zero());
    }

    #[test]
    fn triangular_solve_matches_reversion() {
        let n = 7;
        let m = GraphSurface::new(
            Series3::from_terms(
                n,
                [
                    ((1, 1, 1), g(1)),
                    ((2, 2, 1), GaussianRational::real(rat(1, 3))),
                    ((2, 1, 2), GaussianRational::from_parts(1, 1, 2, 1)),
                    ((1, 2, 2), GaussianRational::from_parts(1, 1, -2, 1)),
                    ((1, 1, 3), g(-4)),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let map = FormalMap::new(
            holo(
                n,
                &[((0, 1), GaussianRational::from_parts(1, 2, 1, 1)), ((3, 0), g(2)), ((1, 1), GaussianRational::i())],
            ),
            holo(n, &[((0, 2), GaussianRational::from_parts(0, 1, 1, 1)), ((2, 1), g(1))]),
        )
        .unwrap();
        let a = transform(&m, &map).unwrap();
        let b = transform_by_reversion(&m, &map).unwrap();
        assert_eq!(a, b);
        assert!(map_defect(&m, &map, &a).unwrap().is_zero());
        assert!(!map_defect(&m, &map, &m).unwrap().is_zero());
    }

    #[test]
    fn rejects_mismatched_orders() {
        assert!(matches!(transform(&quadric(6), &FormalMap::identity(7)), Err(Error::OrderMismatch { .. })));
    }
}
