use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

use super::series3::{degree, Series3};

/// Inverts the real change of variables `(z, zb, u) -> (z1, conj z1, u1)`.
///
/// Returns `(Z, U)` in the image variables with `z1(Z, conj Z, U) = z` and
/// `u1(Z, conj Z, U) = u` to the truncation order. The linear part must be
/// `(z + a u, u)`; it is unipotent, so the fixed-point iteration
/// `Z <- z - (z1 - z)(Z, conj Z, U)`, `U <- u - (u1 - u)(Z, conj Z, U)` becomes
/// stationary after finitely many passes.
pub fn invert_real_triple(z1: &Series3, u1: &Series3) -> Result<(Series3, Series3)> {
    let n = z1.order();
    if u1.order() != n {
        return Err(Error::OrderMismatch { left: n, right: u1.order() });
    }
    check_linear_part(z1, u1)?;
    let (z, u) = (Series3::z(n), Series3::u(n));
    let a = z1.sub(&z);
    let b = u1.sub(&u);
    let mut big_z = z.clone();
    let mut big_u = u.clone();
    let passes = 2 * n as usize + 4;
    for _ in 0..passes {
        let big_zb = big_z.hermitian_conjugate();
        let z_next = z.sub(&a.substitute(&big_z, &big_zb, &big_u)?);
        let u_next = u.sub(&b.substitute(&big_z, &big_zb, &big_u)?);
        if z_next == big_z && u_next == big_u {
            return Ok((big_z, big_u));
        }
        big_z = z_next;
        big_u = u_next;
    }
    Err(Error::ReversionStalled(passes))
}

/// Accepts linear parts `z1 = z + a u`, `u1 = u`.
pub(crate) fn check_linear_part(z1: &Series3, u1: &Series3) -> Result<()> {
    let one = GaussianRational::one();
    for (e, c) in z1.terms().chain(u1.terms()) {
        if degree(e) == 0 && !c.is_zero() {
            return Err(Error::NonzeroConstant);
        }
    }
    let bad = |what: &str| Err(Error::NotUnipotent(what.to_string()));
    if z1.coeff((1, 0, 0)) != one || !z1.coeff((0, 1, 0)).is_zero() {
        return bad("z-component must be z + a*u + higher order terms");
    }
    if u1.coeff((0, 0, 1)) != one || !u1.coeff((1, 0, 0)).is_zero() || !u1.coeff((0, 1, 0)).is_zero() {
        return bad("u-component must be u + higher order terms");
    }
    Ok(())
}
