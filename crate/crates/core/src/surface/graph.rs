use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Exp3, Result};
use crate::scalar::{rat, rational_sqrt, GaussianRational, Rational};
use crate::series::{degree, Series3};

/// The hypersurface `Im w = phi(z, zb, Re w)`.
///
/// `phi` is Hermitian and vanishes to second order at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSurface {
    phi: Series3,
}

impl GraphSurface {
    pub fn new(phi: Series3) -> Result<Self> {
        if let Some(e) = phi.first_non_hermitian() {
            return Err(Error::NotHermitian(e));
        }
        if let Some((e, _)) = phi.terms().find(|(e, _)| degree(*e) < 2) {
            return Err(Error::InvalidSurface(format!(
                "phi must vanish to second order, found term ({},{},{})",
                e.0, e.1, e.2
            )));
        }
        Ok(Self { phi })
    }

    pub fn phi(&self) -> &Series3 {
        &self.phi
    }

    pub fn order(&self) -> u32 {
        self.phi.order()
    }

    /// `phi_abc`; `phi_ab` in the u-linear notation is `coefficient(a, b, 1)`.
    pub fn coefficient(&self, a: u32, b: u32, c: u32) -> Result<GaussianRational> {
        self.phi.checked_coeff((a, b, c))
    }

    pub fn truncate(&self, n: u32) -> GraphSurface {
        GraphSurface { phi: self.phi.truncate(n) }
    }

    /// The coordinate change `z -> r z` applied to the surface: every
    /// coefficient `phi_abc` is divided by `r^(a+b)`.
    pub fn rescale_z(&self, r: &Rational) -> GraphSurface {
        let terms = self.phi.terms().map(|(e, c)| {
            let f = num_traits::pow(r.clone(), (e.0 + e.1) as usize);
            (e, c.scale(&(rat(1, 1) / f)))
        });
        GraphSurface { phi: Series3::from_terms(self.order(), terms).expect("same exponents") }
    }
}

/// A violated structural condition at a particular monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub condition: String,
}

impl Violation {
    pub fn new(e: Exp3, condition: impl Into<String>) -> Self {
        Self { a: e.0, b: e.1, c: e.2, condition: condition.into() }
    }
}

/// Outcome of [`validate_class`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub order: u32,
    /// `phi(z, zb, 0) = 0` to the truncation order.
    pub is_infinite_type: bool,
    /// `phi(z, 0, u) = phi(0, zb, u) = 0` to the truncation order.
    pub is_normal_coordinates: bool,
    pub phi11: GaussianRational,
    pub in_class: bool,
    pub diagnostics: Vec<Violation>,
    /// The surface rescaled so that `phi11 = 1`, when `phi11` is a positive
    /// rational square.
    pub rescaled: Option<GraphSurface>,
}

/// Checks the class conditions: infinite type, normal coordinates and a
/// Levi form vanishing to first order (`phi11` a positive rational square).
pub fn validate_class(m: &GraphSurface) -> ClassReport {
    let mut diagnostics = Vec::new();
    let mut infinite = true;
    let mut normal = true;
    for (e, _) in m.phi.graded_terms() {
        if e.2 == 0 {
            infinite = false;
            diagnostics.push(Violation::new(e, "infinite type: phi(z, zb, 0) must vanish"));
        }
        if e.0 == 0 || e.1 == 0 {
            normal = false;
            diagnostics.push(Violation::new(e, "normal coordinates: phi(z, 0, u) must vanish"));
        }
    }
    let phi11 = m.phi.coeff((1, 1, 1));
    let mut rescaled = None;
    let levi_ok = if phi11.is_zero() {
        diagnostics.push(Violation::new((1, 1, 1), "phi11 must be nonzero (Levi form vanishing to first order)"));
        false
    } else if phi11.re.is_negative() {
        diagnostics.push(Violation::new((1, 1, 1), "phi11 must be positive; its sign is invariant"));
        false
    } else {
        match rational_sqrt(&phi11.re) {
            Some(r) => {
                if !phi11.re.is_one() {
                    rescaled = Some(m.rescale_z(&r));
                } else {
                    rescaled = Some(m.clone());
                }
                true
            }
            None => {
                diagnostics.push(Violation::new(
                    (1, 1, 1),
                    "phi11 is not a rational square: not normalizable within the rational field",
                ));
                false
            }
        }
    };
    let in_class = infinite && normal && levi_ok;
    ClassReport {
        order: m.order(),
        is_infinite_type: infinite,
        is_normal_coordinates: normal,
        phi11,
        in_class,
        diagnostics,
        rescaled: if in_class { rescaled } else { None },
    }
}

/// Fails unless the surface is in the class with `phi11 = 1`.
pub(crate) fn require_class_unit(m: &GraphSurface) -> Result<()> {
    let report = validate_class(m);
    if !report.in_class {
        let first = report.diagnostics.first().map(|v| format!("({},{},{}) {}", v.a, v.b, v.c, v.condition));
        return Err(Error::ClassViolation(first.unwrap_or_default()));
    }
    if !report.phi11.is_one() {
        return Err(Error::ClassViolation(format!(
            "phi11 = {} must be 1; rescale z first (validate_class returns the rescaled surface)",
            report.phi11
        )));
    }
    Ok(())
}
