use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::scalar::{GaussianRational, KPoly};

/// Square matrix whose entries are polynomials in the stage index `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMatrix {
    rows: Vec<Vec<KPoly>>,
}

impl KMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { rows: vec![vec![KPoly::zero(); dim]; dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.rows[i][i] = KPoly::one();
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<KPoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "KMatrix must be square");
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &KPoly {
        &self.rows[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: KPoly) {
        self.rows[row][col] = p;
    }

    pub fn rows(&self) -> &[Vec<KPoly>] {
        &self.rows
    }

    pub fn eval(&self, k: &GaussianRational) -> Vec<Vec<GaussianRational>> {
        self.rows.iter().map(|r| r.iter().map(|p| p.eval(k)).collect()).collect()
    }

    pub fn eval_int(&self, k: i64) -> Vec<Vec<GaussianRational>> {
        self.eval(&GaussianRational::from_int(k))
    }

    /// Sub-matrix on the given rows and columns, in the given order.
    pub fn extract(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<KPoly>> {
        rows.iter().map(|&r| cols.iter().map(|&c| self.rows[r][c].clone()).collect()).collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> KPoly {
        det(&self.rows)
    }
}

/// Bareiss elimination over `Q(i)[k]`. Every division is exact.
pub fn det(rows: &[Vec<KPoly>]) -> KPoly {
    let n = rows.len();
    if n == 0 {
        return KPoly::one();
    }
    let mut m = rows.to_vec();
    let mut sign_negative = false;
    let mut prev = KPoly::one();
    for p in 0..n - 1 {
        if m[p][p].is_zero() {
            match (p + 1..n).find(|&r| !m[r][p].is_zero()) {
                Some(r) => {
                    m.swap(p, r);
                    sign_negative = !sign_negative;
                }
                None => return KPoly::zero(),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let num = &(&m[i][j] * &m[p][p]) - &(&m[i][p] * &m[p][j]);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][p] = KPoly::zero();
        }
        prev = m[p][p].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_negative {
        -d
    } else {
        d
    }
}

/// Determinant of a matrix of scalars, by Gaussian elimination.
pub fn det_scalar(rows: &[Vec<GaussianRational>]) -> GaussianRational {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut d = GaussianRational::from_int(1);
    for p in 0..n {
        let Some(r) = (p..n).find(|&r| !m[r][p].is_zero()) else {
            return GaussianRational::zero();
        };
        if r != p {
            m.swap(p, r);
            d = -d;
        }
        let inv = m[p][p].checked_inv().expect("nonzero pivot");
        d *= &m[p][p];
        for i in p + 1..n {
            if m[i][p].is_zero() {
                continue;
            }
            let f = &m[i][p] * &inv;
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][p..].iter_mut().zip(&top[p][p..]) {
                *x -= &(&f * y);
            }
        }
    }
    d
}

impl fmt::Display for KMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized as rows of polynomial strings in `k`.
impl Serialize for KMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        rows.serialize(s)
    }
}
