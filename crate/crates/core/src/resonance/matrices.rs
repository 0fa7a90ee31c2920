use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rat, GaussianRational, KPoly, Rational, DEFAULT_ROOT_CEILING};
use crate::surface::Jet7;

use super::kmatrix::KMatrix;

/// Real and imaginary parts of the jet entries the matrices depend on.
pub(crate) struct JetParts {
    pub p22: Rational,
    pub a32: Rational,
    pub b32: Rational,
    pub p33: Rational,
    pub a42: Rational,
    pub b42: Rational,
    pub a43: Rational,
    pub b43: Rational,
}

impl JetParts {
    pub fn of(j: &Jet7) -> Self {
        Self {
            p22: j.phi22.re.clone(),
            a32: j.phi32.re.clone(),
            b32: j.phi32.im.clone(),
            p33: j.phi33.re.clone(),
            a42: j.phi42.re.clone(),
            b42: j.phi42.im.clone(),
            a43: j.phi43.re.clone(),
            b43: j.phi43.im.clone(),
        }
    }
}

pub(crate) fn n(v: i64) -> Rational {
    rat(v, 1)
}

/// Builds a matrix from 1-based `(row, col, coefficients lowest power first)`.
pub(crate) fn build(dim: usize, entries: Vec<(usize, usize, Vec<Rational>)>) -> KMatrix {
    let mut m = KMatrix::zero(dim);
    for (r, c, coeffs) in entries {
        m.set(r - 1, c - 1, KPoly::from_rationals(&coeffs));
    }
    m
}

/// Rows and columns of the stage matrix, in order.
pub const A_ROWS: [&str; 9] =
    ["Re dphi10", "Im dphi10", "dphi11", "Re dphi21", "Im dphi21", "dphi22", "Re dphi32", "Im dphi32", "dphi33"];
pub const A_COLS: [&str; 9] = ["Re g1", "Im g1", "Re f0", "Im f0", "Re g0", "Re f1", "Im f1", "Re f2", "Im f2"];
pub const B_COLS: [&str; 4] = ["Re f0", "Im f0", "Re f1", "Im f1"];

/// Linear dependence of the nine stage-`k` conditions on the nine
/// distinguished stage-`k` unknowns (`g_1k`, `f_0,k-1`, `Re g_0k`,
/// `f_1,k-1`, `f_2,k-1`), with rows and columns as in [`A_ROWS`], [`A_COLS`].
///
/// Entries were obtained from the exact transformation rule and agree with
/// probing the stage transform (see the normalizer tests).
pub fn matrix_a(j: &Jet7) -> KMatrix {
    let JetParts { p22, a32, b32, p33, a42, b42, a43, b43 } = JetParts::of(j);
    let h = |a, b| rat(a, b);
    build(
        9,
        vec![
            (1, 2, vec![h(1, 2)]),
            (1, 3, vec![n(-1)]),
            (2, 1, vec![h(-1, 2)]),
            (2, 4, vec![n(1)]),
            (3, 5, vec![n(-1), n(1)]),
            (3, 6, vec![n(-2)]),
            (4, 1, vec![h(-1, 2), h(1, 2)]),
            (4, 3, vec![n(-2) * &p22]),
            (4, 4, vec![n(-1), n(1)]),
            (4, 8, vec![n(-1)]),
            (5, 2, vec![h(-1, 2), h(1, 2)]),
            (5, 3, vec![n(-1), n(1)]),
            (5, 4, vec![n(2) * &p22]),
            (5, 9, vec![n(-1)]),
            (6, 3, vec![n(-6) * &a32]),
            (6, 4, vec![n(6) * &b32]),
            (6, 5, vec![-p22.clone(), p22.clone()]),
            (6, 6, vec![n(-4) * &p22]),
            (6, 7, vec![n(-2), n(2)]),
            (7, 1, vec![-&p22 / n(2), &p22 / n(2)]),
            (7, 2, vec![n(0), h(3, 4), h(-1, 4)]),
            (7, 3, vec![n(1) - n(3) * &p33 - n(4) * &a42, h(-3, 2), h(1, 2)]),
            (7, 4, vec![n(4) * &b42 - n(3) * &p22, n(3) * &p22]),
            (7, 5, vec![-a32.clone(), a32.clone()]),
            (7, 6, vec![n(-5) * &a32]),
            (7, 7, vec![b32.clone()]),
            (7, 8, vec![n(-2) * &p22]),
            (7, 9, vec![n(-1), n(1)]),
            (8, 1, vec![n(0), h(-3, 4), h(1, 4)]),
            (8, 2, vec![-&p22 / n(2), &p22 / n(2)]),
            (8, 3, vec![n(-4) * &b42 - n(3) * &p22, n(3) * &p22]),
            (8, 4, vec![n(-1) + n(3) * &p33 - n(4) * &a42, h(3, 2), h(-1, 2)]),
            (8, 5, vec![-b32.clone(), b32.clone()]),
            (8, 6, vec![n(-5) * &b32]),
            (8, 7, vec![-a32.clone()]),
            (8, 8, vec![n(1), n(-1)]),
            (8, 9, vec![n(-2) * &p22]),
            (9, 1, vec![-a32.clone(), a32.clone()]),
            (9, 2, vec![-b32.clone(), b32.clone()]),
            (9, 3, vec![n(-8) * &a43 - n(8) * &b32, n(8) * &b32]),
            (9, 4, vec![n(8) * &b43 - n(8) * &a32, n(8) * &a32]),
            (9, 5, vec![-p33.clone(), &p33 - h(5, 6), n(1), h(-1, 6)]),
            (9, 6, vec![n(2) - n(6) * &p33, n(-3), n(1)]),
            (9, 7, vec![n(-6) * &p22, n(6) * &p22]),
            (9, 8, vec![n(-4) * &a32]),
            (9, 9, vec![n(-4) * &b32]),
        ],
    )
}

/// The 4x4 reduction of [`matrix_a`] on `f_0,k-1` and `f_1,k-1` after
/// eliminating the other five unknowns against the first five conditions
/// (the Schur complement), so that `det A = (k-1)/4 * det B`.
///
/// Rows: `dphi22`, `Re dphi32`, `Im dphi32`, `dphi33`; columns as in [`B_COLS`].
pub fn matrix_b(j: &Jet7) -> KMatrix {
    let JetParts { p22, a32, b32, p33, a42, b42, a43, b43 } = JetParts::of(j);
    let sq = &p22 * &p22;
    build(
        4,
        vec![
            (1, 1, vec![n(-6) * &a32]),
            (1, 2, vec![n(6) * &b32]),
            (1, 3, vec![n(-2) * &p22]),
            (1, 4, vec![n(-2), n(2)]),
            (2, 1, vec![n(3) + n(4) * &sq - n(3) * &p33 - n(4) * &a42, n(-4), n(2)]),
            (2, 2, vec![n(4) * &b42 - n(2) * &p22, n(2) * &p22]),
            (2, 3, vec![n(-3) * &a32]),
            (2, 4, vec![b32.clone()]),
            (3, 1, vec![n(-4) * &b42 - n(2) * &p22, n(2) * &p22]),
            (3, 2, vec![n(-3) - n(4) * &sq + n(3) * &p33 - n(4) * &a42, n(4), n(-2)]),
            (3, 3, vec![n(-3) * &b32]),
            (3, 4, vec![-a32.clone()]),
            (4, 1, vec![n(8) * &a32 * &p22 - n(8) * &a43 - n(2) * &b32, n(2) * &b32]),
            (4, 2, vec![n(8) * &b43 - n(8) * &b32 * &p22 - n(2) * &a32, n(2) * &a32]),
            (4, 3, vec![n(2) - n(4) * &p33, rat(-4, 3), rat(2, 3)]),
            (4, 4, vec![n(-6) * &p22, n(6) * &p22]),
        ],
    )
}

/// Characteristic polynomial and resonances of a 7-jet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResonanceReport {
    /// Monic characteristic polynomial, lowest power first.
    pub char_poly: KPoly,
    /// `c` with `char_poly = c * det B`.
    pub monic_constant: GaussianRational,
    /// `det B` itself.
    pub det_b: KPoly,
    pub resonances: BTreeSet<i64>,
    pub jet: Jet7,
}

pub fn char_poly(j: &Jet7) -> Result<ResonanceReport> {
    char_poly_with_ceiling(j, DEFAULT_ROOT_CEILING)
}

pub fn char_poly_with_ceiling(j: &Jet7, ceiling: u64) -> Result<ResonanceReport> {
    ResonanceReport::from_det_b(matrix_b(j).det(), j, ceiling)
}

impl ResonanceReport {
    /// The report for a given `det B`, e.g. one computed from another matrix.
    pub fn from_det_b(det_b: KPoly, j: &Jet7, ceiling: u64) -> Result<Self> {
        if det_b.is_zero() {
            return Err(Error::DegenerateJet);
        }
        let (monic, lc) = det_b.make_monic()?;
        let monic_constant = lc.checked_inv().ok_or(Error::DegenerateJet)?;
        let resonances = monic.integer_roots_ge2_with_ceiling(ceiling)?;
        Ok(ResonanceReport { char_poly: monic, monic_constant, det_b, resonances, jet: j.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn jet(p22: Rational, p32: G, p33: Rational, p42: G, p43: G) -> Jet7 {
        Jet7::new(G::real(p22), p32, G::real(p33), p42, p43).unwrap()
    }

    fn kp(c: &[i64]) -> KPoly {
        KPoly::from_rationals(&c.iter().map(|&x| n(x)).collect::<Vec<_>>())
    }

    #[test]
    fn fixed_entries() {
        let a = matrix_a(&Jet7::zero());
        assert_eq!(a.get(0, 1), &KPoly::constant(G::real(rat(1, 2))));
        assert_eq!(a.get(0, 2), &kp(&[-1]));
        assert_eq!(a.get(2, 4), &KPoly::k_minus(1));
        assert_eq!(a.get(2, 5), &kp(&[-2]));
        let b = matrix_b(&Jet7::zero());
        assert_eq!(b.get(0, 3), &kp(&[-2, 2]));
    }

    #[test]
    fn quadric_determinants() {
        // (4/3)(k-1)(k^2-2k+3)(2k^2-4k+3)^2
        let expected = (&(&kp(&[-1, 1]) * &kp(&[3, -2, 1])) * &kp(&[3, -4, 2]).pow(2)).scale(&G::real(rat(4, 3)));
        let db = matrix_b(&Jet7::zero()).det();
        assert_eq!(db, expected);
        let da = matrix_a(&Jet7::zero()).det();
        assert_eq!(da, (&kp(&[-1, 1]) * &db).scale(&G::real(rat(1, 4))));
        let r = char_poly(&Jet7::zero()).unwrap();
        assert_eq!(r.monic_constant, G::real(rat(3, 16)));
        assert_eq!(r.char_poly.degree(), Some(7));
        assert!(r.resonances.is_empty());
    }

    #[test]
    fn det_a_factors_through_det_b() {
        let j = jet(
            rat(1, 3),
            G::from_parts(2, 1, -1, 2),
            rat(-5, 7),
            G::from_parts(1, 4, 3, 1),
            G::from_parts(-2, 3, 1, 5),
        );
        let da = matrix_a(&j).det();
        let db = matrix_b(&j).det();
        assert_eq!(da, (&kp(&[-1, 1]) * &db).scale(&G::real(rat(1, 4))));
        assert_eq!(db.degree(), Some(7));
        assert_eq!(db.leading(), Some(&G::real(rat(16, 3))));
    }

    #[test]
    fn mm_jet_with_m_one() {
        // phi22 = 0, phi33 = 1 (from (2m^2+1)/3): resonances m+1 and 2m+1
        let j = jet(n(0), G::from_int(0), n(1), G::from_int(0), G::from_int(0));
        assert_eq!(char_poly(&j).unwrap().resonances, BTreeSet::from([2, 3]));
    }
}
