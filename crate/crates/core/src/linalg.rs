//! Exact Gaussian elimination and the quotient/section construction used for
//! balanced tensor products.

use crate::error::{dim_err, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

/// Reduced echelon basis of a growing span, rows kept sorted by pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    len: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    let mut t = r.clone();
                    t *= &f;
                    *x -= &t;
                }
            }
        }
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = F::one() / v[p].clone();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    let mut t = r.clone();
                    t *= &f;
                    *x -= &t;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(F::is_zero)
    }
}

pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    let mut e = Echelon::new(m.cols());
    for r in 0..m.rows() {
        e.insert(m.row(r));
    }
    let mut rows = e.rows.clone();
    rows.resize(m.rows(), vec![F::zero(); m.cols()]);
    Rref { matrix: Matrix::try_from_rows(rows, m.cols()).expect("rows have matrix width"), pivots: e.pivots }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).pivots.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, free entry set to 1.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let Rref { matrix: r, pivots } = rref(m);
    let n = m.cols();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| pivots.binary_search(c).is_err()) {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[(row, free)].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `a x = b`, with free variables set to zero.
pub fn solve_linear<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>> {
    if b.len() != a.rows() {
        return Err(dim_err(format!("rhs has length {} for {} rows", b.len(), a.rows())));
    }
    let aug = a.hstack(&Matrix::column_vector(b));
    let Rref { matrix: r, pivots } = rref(&aug);
    let n = a.cols();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![F::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, n)].clone();
    }
    Ok(Some(x))
}

/// Solves `a X = b` column by column.
pub fn solve_matrix<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    let mut cols = Vec::with_capacity(b.cols());
    for c in 0..b.cols() {
        match solve_linear(a, &b.column(c))? {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(Matrix::from_columns(a.cols(), &cols)))
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let Rref { matrix: r, pivots } = rref(&m.hstack(&Matrix::identity(n)));
    if pivots.iter().take_while(|&&p| p < n).count() < n {
        return None;
    }
    Some(r.submatrix(0..n, n..2 * n))
}

/// Projection onto `V / span` and a section of it.
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient<F> {
    /// `q x n`, kills the span.
    pub projection: Matrix<F>,
    /// `n x q`, `projection * section = I`.
    pub section: Matrix<F>,
}

/// Quotient of `F^ambient` by the span of `vectors`.
///
/// The complement is spanned by the standard vectors at the non-pivot
/// coordinates of the reduced echelon form, so the result depends only on the
/// span and not on the spanning set.
pub fn quotient_with_section<F: Field>(ambient: usize, vectors: &[Vec<F>]) -> Result<Quotient<F>> {
    let mut e = Echelon::new(ambient);
    for v in vectors {
        if v.len() != ambient {
            return Err(dim_err(format!("span vector of length {} in ambient {ambient}", v.len())));
        }
        if v.iter().any(|x| !x.is_zero()) {
            e.insert(v);
        }
    }
    Ok(quotient_from_echelon(&e))
}

pub fn quotient_from_echelon<F: Field>(e: &Echelon<F>) -> Quotient<F> {
    let n = e.len;
    let free: Vec<usize> = (0..n).filter(|c| e.pivots.binary_search(c).is_err()).collect();
    let q = free.len();
    let mut projection = Matrix::zeros(q, n);
    let mut section = Matrix::zeros(n, q);
    for (i, &c) in free.iter().enumerate() {
        section[(c, i)] = F::one();
        projection[(i, c)] = F::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if !row[c].is_zero() {
                projection[(i, p)] = -row[c].clone();
            }
        }
    }
    Quotient { projection, section }
}

/// Coordinates with respect to a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinates<F> {
    basis: Matrix<F>,
    left_inverse: Matrix<F>,
}

impl<F: Field> Coordinates<F> {
    /// `vectors` must be linearly independent and of length `len`.
    pub fn new(len: usize, vectors: &[Vec<F>]) -> Result<Self> {
        let k = vectors.len();
        if vectors.iter().any(|v| v.len() != len) {
            return Err(dim_err("basis vectors have inconsistent length"));
        }
        let basis = Matrix::from_columns(len, vectors);
        let Rref { matrix: r, pivots } = rref(&basis.hstack(&Matrix::identity(len)));
        if pivots.iter().take_while(|&&p| p < k).count() < k {
            return Err(dim_err("family is linearly dependent"));
        }
        Ok(Coordinates { basis, left_inverse: r.submatrix(0..k, k..k + len) })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn of(&self, v: &[F]) -> Option<Vec<F>> {
        let c = self.left_inverse.apply(v);
        (self.basis.apply(&c) == v).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect())
    }

    #[test]
    fn rref_of_rank_one_block() {
        let r = rref(&qm(vec![vec![1, 2], vec![2, 4]]));
        assert_eq!(r.matrix, qm(vec![vec![1, 2], vec![0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(kernel_basis(&qm(vec![vec![1, 2], vec![2, 4]])), vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let a = qm(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(solve_linear(&a, &[q(1), q(2)]).unwrap(), None);
        assert!(solve_linear(&a, &[q(1)]).is_err());
    }

    #[test]
    fn quotient_by_diagonal() {
        let qt = quotient_with_section(2, &[vec![q(1), q(1)]]).unwrap();
        assert_eq!(qt.projection, qm(vec![vec![-1, 1]]));
        assert_eq!(qt.section, qm(vec![vec![0], vec![1]]));
        assert!(qt.projection.mul(&qt.section).is_identity());
    }

    #[test]
    fn quotient_ignores_spanning_set() {
        let a = quotient_with_section(3, &[vec![q(1), q(2), q(0)], vec![q(0), q(1), q(1)]]).unwrap();
        let b = quotient_with_section(3, &[vec![q(1), q(3), q(1)], vec![q(2), q(4), q(0)], vec![q(0); 3]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn inverse_and_singular() {
        let a = qm(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(inverse(&a).unwrap(), qm(vec![vec![1, -1], vec![-1, 2]]));
        assert!(inverse(&qm(vec![vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn coordinates_reject_outside_span() {
        let c = Coordinates::new(3, &[vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]).unwrap();
        assert_eq!(c.of(&[q(2), q(3), q(1)]), Some(vec![q(2), q(1)]));
        assert_eq!(c.of(&[q(1), q(0), q(0)]), None);
        assert!(Coordinates::new(2, &[vec![q(1), q(1)], vec![q(2), q(2)]]).is_err());
    }

    #[test]
    fn works_over_floats() {
        let a = Matrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 4.0]]);
        assert_eq!(solve_linear(&a, &[1.0, 1.0]).unwrap(), Some(vec![0.5, 0.25]));
    }
}
