use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::UniSeries;

use super::graph::{GraphSurface, Violation};

/// The presentation `phi = u (|z|^2 + sum N_ab(u) z^a zb^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NabForm {
    pub order: u32,
    /// `N_ab(u)`; `N_ab` is known up to `u^(order - a - b - 1)`.
    pub entries: BTreeMap<(u32, u32), UniSeries>,
}

impl NabForm {
    pub fn get(&self, a: u32, b: u32) -> Option<&UniSeries> {
        self.entries.get(&(a, b))
    }
}

fn require_unit_phi11(m: &GraphSurface) -> Result<()> {
    if !m.phi().coeff((1, 1, 1)).is_one() {
        return Err(Error::ClassViolation("phi11 must be 1".into()));
    }
    Ok(())
}

pub fn to_nab(m: &GraphSurface) -> Result<NabForm> {
    require_unit_phi11(m)?;
    let n = m.order();
    let mut entries: BTreeMap<(u32, u32), UniSeries> = BTreeMap::new();
    for (e, c) in m.phi().terms() {
        let (a, b, cu) = e;
        if cu == 0 {
            return Err(Error::ClassViolation(format!("term ({a},{b},0) is not divisible by u")));
        }
        if e == (1, 1, 1) {
            continue;
        }
        let len = n - a - b - 1;
        let entry = entries.entry((a, b)).or_insert_with(|| UniSeries::zero(len));
        entry.set_coeff(cu - 1, c.clone());
    }
    Ok(NabForm { order: n, entries })
}

/// Which levels to check and which (resonant) levels are exempt from the
/// derivative conditions on `N22`, `N32`, `N33`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalFormOptions {
    /// Only u-levels `c <= max_level` are checked (all levels if `None`).
    pub max_level: Option<u32>,
    pub exempt_levels: BTreeSet<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalFormReport {
    pub order: u32,
    pub max_level: Option<u32>,
    pub holds: bool,
    pub violations: Vec<Violation>,
}

/// Reports every coefficient breaking the normal form conditions
/// `N_a0 = N_a1 = 0` (with `N_0b`, `N_1b` by symmetry) and
/// `N22' = N32' = N33' = 0`, plus any term not divisible by `u`.
pub fn check_normal_form(m: &GraphSurface, opts: &NormalFormOptions) -> Result<NormalFormReport> {
    require_unit_phi11(m)?;
    let mut violations = Vec::new();
    for (e, c) in m.phi().graded_terms() {
        let (a, b, cu) = e;
        if c.is_zero() || opts.max_level.is_some_and(|k| cu > k) {
            continue;
        }
        if cu == 0 {
            violations.push(Violation::new(e, "phi must be divisible by u"));
        } else if a == 0 || b == 0 || ((a == 1 || b == 1) && e != (1, 1, 1)) {
            violations.push(Violation::new(e, format!("N_{a}{b} must vanish")));
        } else if matches!((a, b), (2, 2) | (3, 2) | (2, 3) | (3, 3)) && cu >= 2 && !opts.exempt_levels.contains(&cu) {
            violations.push(Violation::new(e, format!("dN_{a}{b}/du must vanish (u-index {})", cu - 1)));
        }
    }
    Ok(NormalFormReport { order: m.order(), max_level: opts.max_level, holds: violations.is_empty(), violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, GaussianRational};
    use crate::series::Series3;

    fn surface(n: u32, terms: &[((u32, u32, u32), GaussianRational)]) -> GraphSurface {
        GraphSurface::new(Series3::from_terms(n, terms.iter().cloned()).unwrap()).unwrap()
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn quadric_is_normal() {
        let q = surface(8, &[((1, 1, 1), g(1))]);
        let r = check_normal_form(&q, &NormalFormOptions::default()).unwrap();
        assert!(r.holds);
        assert!(to_nab(&q).unwrap().entries.is_empty());
    }

    #[test]
    fn detects_derivative_violation() {
        let m = surface(8, &[((1, 1, 1), g(1)), ((2, 2, 2), g(1))]);
        let nab = to_nab(&m).unwrap();
        assert_eq!(nab.get(2, 2).unwrap().coeff(1), g(1));
        let r = check_normal_form(&m, &NormalFormOptions::default()).unwrap();
        assert!(!r.holds);
        assert_eq!((r.violations[0].a, r.violations[0].b, r.violations[0].c), (2, 2, 2));
        assert!(r.violations[0].condition.contains("u-index 1"));

        let exempt = NormalFormOptions { max_level: None, exempt_levels: BTreeSet::from([2]) };
        assert!(check_normal_form(&m, &exempt).unwrap().holds);
        let capped = NormalFormOptions { max_level: Some(1), ..Default::default() };
        assert!(check_normal_form(&m, &capped).unwrap().holds);
    }

    #[test]
    fn constant_n22_and_n33_are_allowed() {
        let m = surface(
            9,
            &[
                ((1, 1, 1), g(1)),
                ((2, 2, 1), GaussianRational::real(rat(1, 4))),
                ((3, 3, 1), GaussianRational::real(rat(-2, 3))),
            ],
        );
        assert!(check_normal_form(&m, &NormalFormOptions::default()).unwrap().holds);
        let nab = to_nab(&m).unwrap();
        assert_eq!(nab.get(2, 2).unwrap().coeff(0), GaussianRational::real(rat(1, 4)));
    }

    #[test]
    fn detects_first_order_conditions() {
        let m = surface(8, &[((1, 1, 1), g(1)), ((2, 1, 3), g(1)), ((1, 2, 3), g(1)), ((1, 1, 2), g(3))]);
        let r = check_normal_form(&m, &NormalFormOptions::default()).unwrap();
        assert_eq!(r.violations.len(), 3);
        let q2 = surface(8, &[((1, 1, 1), g(2))]);
        assert!(check_normal_form(&q2, &NormalFormOptions::default()).is_err());
    }
}
