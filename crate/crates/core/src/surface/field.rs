use crate::error::{Error, Result};
use crate::scalar::{rat, GaussianRational};
use crate::series::{eval_holo, HoloSeries2, Series3};

use super::graph::GraphSurface;

/// Holomorphic vector field `X_z d/dz + X_w d/dw` vanishing at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    xz: HoloSeries2,
    xw: HoloSeries2,
}

impl VectorField {
    pub fn new(xz: HoloSeries2, xw: HoloSeries2) -> Result<Self> {
        if xz.order() != xw.order() {
            return Err(Error::OrderMismatch { left: xz.order(), right: xw.order() });
        }
        if xz.coeff_ref((0, 0)).is_some() || xw.coeff_ref((0, 0)).is_some() {
            return Err(Error::InvalidField("the field must vanish at the origin".into()));
        }
        Ok(Self { xz, xw })
    }

    pub fn zero(order: u32) -> Self {
        Self { xz: HoloSeries2::zero(order), xw: HoloSeries2::zero(order) }
    }

    pub fn xz(&self) -> &HoloSeries2 {
        &self.xz
    }

    pub fn xw(&self) -> &HoloSeries2 {
        &self.xw
    }

    pub fn order(&self) -> u32 {
        self.xz.order()
    }
}

/// `2 Re(X rho)` on the surface, with
/// `rho = (w - conj w)/(2i) - phi(z, zb, (w + conj w)/2)`.
///
/// Zero exactly when `X` is tangent to the surface to the truncation order.
pub fn infinitesimal_defect(m: &GraphSurface, x: &VectorField) -> Result<Series3> {
    if m.order() != x.order() {
        return Err(Error::OrderMismatch { left: m.order(), right: x.order() });
    }
    let n = m.order();
    let phi = m.phi();
    let z = Series3::z(n);
    let w = Series3::u(n).add(&phi.scale(&GaussianRational::i()));
    let xz = eval_holo(&x.xz, &z, &w)?;
    let xw = eval_holo(&x.xw, &z, &w)?;
    // d rho/dz = -phi_z, d rho/dw = 1/(2i) - phi_u / 2
    let rho_z = phi.partial_z().neg();
    let rho_w = Series3::constant(n, GaussianRational::from_parts(0, 1, -1, 2))
        .sub(&phi.partial_u().scale_rational(&rat(1, 2)));
    Ok(xz.mul(&rho_z).add(&xw.mul(&rho_w)).twice_real_part())
}
