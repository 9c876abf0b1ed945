//! Smith normal form and integer systems with optional mod-2 rows.

use std::collections::BTreeSet;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{dim_err, Result};
use crate::matrix::Matrix;

pub type IntMatrix = Matrix<BigInt>;

/// Euclidean rings handled by [`smith_normal_form`].
pub trait EuclideanRing: Integer + Signed + Clone + Debug {}
impl<T: Integer + Signed + Clone + Debug> EuclideanRing for T {}

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal,
/// nonnegative and satisfying `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Smith<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: EuclideanRing> Smith<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

fn row_axpy<T: EuclideanRing>(m: &mut Matrix<T>, dst: usize, src: usize, k: &T) {
    for c in 0..m.cols() {
        let t = m[(src, c)].clone() * k.clone();
        m[(dst, c)] = m[(dst, c)].clone() + t;
    }
}

fn col_axpy<T: EuclideanRing>(m: &mut Matrix<T>, dst: usize, src: usize, k: &T) {
    for r in 0..m.rows() {
        let t = m[(r, src)].clone() * k.clone();
        m[(r, dst)] = m[(r, dst)].clone() + t;
    }
}

fn swap_rows<T: Clone>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a != b {
        for c in 0..m.cols() {
            let t = m[(a, c)].clone();
            m[(a, c)] = m[(b, c)].clone();
            m[(b, c)] = t;
        }
    }
}

fn swap_cols<T: Clone>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a != b {
        for r in 0..m.rows() {
            let t = m[(r, a)].clone();
            m[(r, a)] = m[(r, b)].clone();
            m[(r, b)] = t;
        }
    }
}

pub fn smith_normal_form<T: EuclideanRing>(a: &Matrix<T>) -> Smith<T> {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v);
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let k = -d[(i, t)].div_floor(&d[(t, t)]);
                row_axpy(&mut d, i, t, &k);
                row_axpy(&mut u, i, t, &k);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let k = -d[(t, j)].div_floor(&d[(t, t)]);
                col_axpy(&mut d, j, t, &k);
                col_axpy(&mut v, j, t, &k);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match bad_row {
                Some(i) => {
                    let one = T::one();
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
    }
    finish(u, d, v)
}

fn finish<T: EuclideanRing>(mut u: Matrix<T>, mut d: Matrix<T>, v: Matrix<T>) -> Smith<T> {
    for t in 0..d.rows().min(d.cols()) {
        if d[(t, t)].is_negative() {
            for c in 0..d.cols() {
                d[(t, c)] = -d[(t, c)].clone();
            }
            for c in 0..u.cols() {
                u[(t, c)] = -u[(t, c)].clone();
            }
        }
    }
    Smith { u, d, v }
}

/// Integer solution of `a x = b`, where rows in `mod2_rows` only need to hold
/// modulo 2. Returns `None` when no integer solution exists.
///
/// Each mod-2 row `r` gets a slack variable `t_r` entering as `-2 t_r`; the
/// enlarged system is then solved exactly through its Smith form.
pub fn solve_integer_system<T: EuclideanRing>(
    a: &Matrix<T>,
    b: &[T],
    mod2_rows: &BTreeSet<usize>,
) -> Result<Option<Vec<T>>> {
    let (m, n) = a.shape();
    if b.len() != m {
        return Err(dim_err(format!("rhs has length {} for {m} rows", b.len())));
    }
    if let Some(&r) = mod2_rows.iter().find(|&&r| r >= m) {
        return Err(dim_err(format!("mod-2 row {r} out of range")));
    }
    let slack = mod2_rows.len();
    let mut aug = Matrix::zeros(m, n + slack);
    for r in 0..m {
        for c in 0..n {
            aug[(r, c)] = a[(r, c)].clone();
        }
    }
    let two = T::one() + T::one();
    for (k, &r) in mod2_rows.iter().enumerate() {
        aug[(r, n + k)] = -two.clone();
    }
    let Smith { u, d, v } = smith_normal_form(&aug);
    let c = u.apply(b);
    let cols = n + slack;
    let mut y = vec![T::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        let di = if i < cols { d[(i, i)].clone() } else { T::zero() };
        if di.is_zero() {
            if !ci.is_zero() {
                return Ok(None);
            }
        } else {
            let (quot, rem) = ci.div_rem(&di);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = quot;
        }
    }
    let mut x = v.apply(&y);
    x.truncate(n);
    Ok(Some(x))
}
