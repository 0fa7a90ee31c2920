//! The stage matrices exactly as they are commonly printed.
//!
//! These differ from [`super::matrix_a`] in the last three rows (two
//! coefficients of the `phi32`/`phi33` rules) and from [`super::matrix_b`]
//! throughout; in particular `det A = (k-1)/4 det B` fails for them once
//! `phi32 != 0`. They are kept for comparison only and are not used by the
//! characteristic polynomial or the normalizer.

use crate::surface::Jet7;

use super::kmatrix::KMatrix;
use super::matrices::{build, n, JetParts};
use crate::scalar::{rat, KPoly};

pub fn matrix_a(j: &Jet7) -> KMatrix {
    let JetParts { p22, a32, b32, p33, a42, b42, a43, b43 } = JetParts::of(j);
    let mut m = super::matrix_a(j);
    for r in 6..9 {
        for c in 0..9 {
            m.set(r, c, KPoly::zero());
        }
    }
    let rows = build(
        9,
        vec![
            (7, 1, vec![-&p22 / n(2), &p22 / n(2)]),
            (7, 2, vec![n(0), rat(3, 4), rat(-1, 4)]),
            (7, 3, vec![n(-3) * &p33 - n(4) * &a42, rat(-1, 2), rat(1, 2)]),
            (7, 4, vec![n(-3) * &p22, n(3) * &p22]),
            (7, 5, vec![-a32.clone(), a32.clone()]),
            (7, 6, vec![n(-5) * &a32]),
            (7, 7, vec![-a32.clone()]),
            (7, 8, vec![-p22.clone()]),
            (7, 9, vec![n(-1), n(1)]),
            (8, 1, vec![n(0), rat(-3, 4), rat(1, 4)]),
            (8, 2, vec![-&p22 / n(2), &p22 / n(2)]),
            (8, 3, vec![n(-3) * &p22, n(3) * &p22]),
            (8, 4, vec![n(3) * &p33 + n(4) * &b42, rat(1, 2), rat(-1, 2)]),
            (8, 5, vec![-b32.clone(), b32.clone()]),
            (8, 6, vec![n(-5) * &b32]),
            (8, 7, vec![-b32.clone()]),
            (8, 8, vec![n(1), n(-1)]),
            (8, 9, vec![-p22.clone()]),
            (9, 1, vec![-a32.clone(), a32.clone()]),
            (9, 2, vec![-b32.clone(), b32.clone()]),
            (9, 3, vec![n(8) * &a43 + n(8) * &b32, n(-8) * &b32]),
            (9, 4, vec![n(8) * &b43 - n(8) * &a32, n(8) * &a32]),
            (9, 5, vec![-p33.clone(), &p33 - n(1), rat(7, 6), rat(-1, 6)]),
            (9, 6, vec![n(-3) * &p33, n(-1), n(1)]),
            (9, 7, vec![n(-6) * &p22, n(6) * &p22]),
            (9, 8, vec![n(-4) * &a32]),
            (9, 9, vec![n(-4) * &b32]),
        ],
    );
    for r in 6..9 {
        for c in 0..9 {
            m.set(r, c, rows.get(r, c).clone());
        }
    }
    m
}

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
            (2, 1, vec![n(2) + n(2) * &sq - n(3) * &p33 - n(4) * &a42, n(-3), n(2)]),
            (2, 2, vec![n(-4) * &p22, n(4) * &p22]),
            (2, 3, vec![n(-3) * &a32]),
            (2, 4, vec![-a32.clone()]),
            (3, 1, vec![n(-4) * &p22, n(4) * &p22]),
            (3, 2, vec![n(-2) - n(2) * &sq + n(3) * &p33 + n(4) * &b42, n(3), n(-2)]),
            (3, 3, vec![n(-3) * &b32]),
            (3, 4, vec![-b32.clone()]),
            (4, 1, vec![n(8) * &a43 - n(8) * &p22 * &a32 + n(14) * &b32, n(-14) * &b32]),
            (4, 2, vec![n(8) * &b43 - n(8) * &p22 * &b32 - n(2) * &a32, n(2) * &a32]),
            (4, 3, vec![-p33.clone(), n(1), rat(2, 3)]),
            (4, 4, vec![n(-6) * &p22, n(6) * &p22]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn kp(c: &[i64]) -> KPoly {
        KPoly::from_rationals(&c.iter().map(|&x| n(x)).collect::<Vec<_>>())
    }

    #[test]
    fn zero_jet_closed_form() {
        // (2/3) k (2k+3) (k-1) (2k^2-3k+2)^2
        let expected =
            (&(&(&kp(&[0, 1]) * &kp(&[3, 2])) * &kp(&[-1, 1])) * &kp(&[2, -3, 2]).pow(2)).scale(&G::real(rat(2, 3)));
        let db = matrix_b(&Jet7::zero()).det();
        assert_eq!(db, expected);
        assert_eq!(db.leading(), Some(&G::real(rat(16, 3))));
        assert_eq!(matrix_a(&Jet7::zero()).det().eval_int(2), G::real(rat(112, 3)));
    }

    #[test]
    fn shares_first_six_rows() {
        let j =
            Jet7::new(G::real(rat(1, 2)), G::from_parts(1, 1, 2, 1), G::real(n(3)), G::from_int(1), G::i()).unwrap();
        let (a, d) = (super::super::matrix_a(&j), matrix_a(&j));
        for r in 0..6 {
            assert_eq!(a.rows()[r], d.rows()[r]);
        }
        assert_ne!(a, d);
    }
}
