//! Exact row reduction over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Outcome of reducing `A x = b` row by row.
///
/// Rows are taken in order; each surviving row pivots on its lowest-index
/// nonzero column after reduction against the earlier pivots. Rows that
/// reduce to `0 = 0` are dependent, rows that reduce to `0 = r` with `r != 0`
/// are inconsistent and dropped. Free columns are set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub solution: Vec<Rational>,
    /// `(row, pivot column)` for each surviving row.
    pub pivots: Vec<(usize, usize)>,
    pub free: Vec<usize>,
    pub dependent: Vec<usize>,
    pub inconsistent: Vec<usize>,
}

impl RowReduction {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// True when the system had a unique solution.
    pub fn is_unique(&self) -> bool {
        self.free.is_empty() && self.inconsistent.is_empty()
    }
}

struct Basis {
    col: usize,
    row: Vec<Rational>,
    rhs: Rational,
}

/// Panics if the rows of `a` do not all have the same length or `b` has the
/// wrong length.
pub fn reduce(a: &[Vec<Rational>], b: &[Rational]) -> RowReduction {
    assert_eq!(a.len(), b.len(), "one right-hand side per row");
    let ncols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == ncols), "ragged matrix");
    let mut basis: Vec<Basis> = Vec::new();
    let mut pivots = Vec::new();
    let mut dependent = Vec::new();
    let mut inconsistent = Vec::new();
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let mut row = row.clone();
        let mut rhs = rhs.clone();
        for bv in &basis {
            if row[bv.col].is_zero() {
                continue;
            }
            let f = &row[bv.col] / &bv.row[bv.col];
            for (x, y) in row.iter_mut().zip(&bv.row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            rhs -= &f * &bv.rhs;
        }
        match row.iter().position(|x| !x.is_zero()) {
            Some(col) => {
                pivots.push((i, col));
                basis.push(Basis { col, row, rhs });
            }
            None if rhs.is_zero() => dependent.push(i),
            None => inconsistent.push(i),
        }
    }
    let pivot_cols: Vec<usize> = basis.iter().map(|bv| bv.col).collect();
    let free = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut x = vec![Rational::zero(); ncols];
    for bv in basis.iter().rev() {
        let mut acc = bv.rhs.clone();
        for (j, y) in bv.row.iter().enumerate() {
            if j != bv.col && !y.is_zero() {
                acc -= y * &x[j];
            }
        }
        x[bv.col] = acc / &bv.row[bv.col];
    }
    RowReduction { solution: x, pivots, free, dependent, inconsistent }
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let b = vec![Rational::zero(); a.len()];
    reduce(a, &b).rank()
}

pub fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|r| r.iter().zip(x).filter(|(y, _)| !y.is_zero()).fold(Rational::zero(), |acc, (y, v)| acc + y * v))
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[2, 1, 0], &[0, 3, 1], &[1, 0, 4]]);
        let x = vec![rat(1, 2), rat(-2, 3), rat(5, 1)];
        let b = mat_vec(&a, &x);
        let r = reduce(&a, &b);
        assert!(r.is_unique());
        assert_eq!(r.solution, x);
        assert_eq!(reduce(&identity(3), &v(&[1, 2, 3])).solution, v(&[1, 2, 3]));
    }

    #[test]
    fn singular_consistent_and_inconsistent() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let r = reduce(&a, &v(&[3, 6]));
        assert_eq!((r.rank(), r.free.clone(), r.dependent.clone()), (1, vec![1], vec![1]));
        assert_eq!(r.solution, v(&[3, 0]));
        let r = reduce(&a, &v(&[3, 7]));
        assert_eq!(r.inconsistent, vec![1]);
        assert_eq!(r.solution, v(&[3, 0]));
        assert!(!r.is_unique());
    }

    #[test]
    fn pivots_on_lowest_column() {
        // the second row pivots on column 2 once column 0 is eliminated
        let a = m(&[&[1, 1, 0], &[1, 1, 1], &[0, 0, 1]]);
        let r = reduce(&a, &v(&[1, 2, 1]));
        assert_eq!(r.pivots, vec![(0, 0), (1, 2)]);
        assert_eq!(r.free, vec![1]);
        assert_eq!(r.dependent, vec![2]);
        assert_eq!(r.solution, v(&[1, 0, 1]));
        assert_eq!(rank(&a), 2);
    }
}
