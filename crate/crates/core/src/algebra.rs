use crate::error::{dim_err, Result};
use crate::group::GroupTable;
use crate::linalg::{inverse, kernel_basis, solve_linear};
use crate::matrix::Matrix;
use crate::report::{Findings, Violation};
use crate::scalar::Field;

/// Finite-dimensional unital algebra given by structure constants
/// `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F> {
    label: String,
    dim: usize,
    consts: Vec<F>,
    unit: Vec<F>,
}

impl<F: Field> Algebra<F> {
    /// `consts` is indexed `[i][j][k]`. Only shapes are checked here; see
    /// [`Algebra::validate`] for the axioms.
    pub fn new(label: impl Into<String>, consts: Vec<Vec<Vec<F>>>, unit: Vec<F>) -> Result<Self> {
        let dim = unit.len();
        if consts.len() != dim || consts.iter().flatten().any(|v| v.len() != dim) || consts.iter().any(|r| r.len() != dim) {
            return Err(dim_err(format!("structure constants are not {dim}x{dim}x{dim}")));
        }
        Ok(Algebra { label: label.into(), dim, consts: consts.into_iter().flatten().flatten().collect(), unit })
    }

    /// Algebra whose basis products come from `f(i, j)`, a coordinate vector.
    pub fn from_products(label: impl Into<String>, dim: usize, unit: Vec<F>, mut f: impl FnMut(usize, usize) -> Vec<F>) -> Result<Self> {
        let consts = (0..dim).map(|i| (0..dim).map(|j| f(i, j)).collect()).collect();
        Self::new(label, consts, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        Algebra { label: "K".into(), dim: 1, consts: vec![F::one()], unit: vec![F::one()] }
    }

    pub fn group_algebra(g: &GroupTable) -> Self {
        let n = g.order();
        let mut unit = vec![F::zero(); n];
        unit[g.identity()] = F::one();
        Self::from_products(format!("K[G{n}]"), n, unit, |a, b| {
            let mut v = vec![F::zero(); n];
            v[g.mul(a, b)] = F::one();
            v
        })
        .expect("group algebra shapes")
    }

    /// `n x n` matrices with basis `E_{rc}` at index `r * n + c`.
    pub fn matrix_algebra(n: usize) -> Self {
        let d = n * n;
        let mut unit = vec![F::zero(); d];
        for i in 0..n {
            unit[i * n + i] = F::one();
        }
        Self::from_products(format!("M{n}"), d, unit, |a, b| {
            let mut v = vec![F::zero(); d];
            let (r, s) = (a / n, a % n);
            let (t, c) = (b / n, b % n);
            if s == t {
                v[r * n + c] = F::one();
            }
            v
        })
        .expect("matrix algebra shapes")
    }

    /// `K[x] / (x^n)` with basis `1, x, ..., x^{n-1}`.
    pub fn truncated_polynomials(n: usize) -> Self {
        assert!(n > 0);
        let mut unit = vec![F::zero(); n];
        unit[0] = F::one();
        Self::from_products(format!("K[x]/x^{n}"), n, unit, |a, b| {
            let mut v = vec![F::zero(); n];
            if a + b < n {
                v[a + b] = F::one();
            }
            v
        })
        .expect("polynomial shapes")
    }

    /// Upper triangular `2 x 2` matrices with basis `E11, E12, E22`.
    pub fn upper_triangular2() -> Self {
        let idx = |r: usize, c: usize| match (r, c) {
            (0, 0) => Some(0),
            (0, 1) => Some(1),
            (1, 1) => Some(2),
            _ => None,
        };
        let pos = [(0, 0), (0, 1), (1, 1)];
        let one = F::one();
        Self::from_products("T2", 3, vec![one.clone(), F::zero(), one], |a, b| {
            let mut v = vec![F::zero(); 3];
            let ((r, s), (t, c)) = (pos[a], pos[b]);
            if s == t {
                v[idx(r, c).expect("upper triangular is closed")] = F::one();
            }
            v
        })
        .expect("triangular shapes")
    }

    /// Componentwise product `A x B`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let d = a.dim + b.dim;
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        Self::from_products(format!("{}x{}", a.label, b.label), d, unit, |i, j| {
            let mut v = vec![F::zero(); d];
            if i < a.dim && j < a.dim {
                v[..a.dim].clone_from_slice(&a.mul_basis(i, j));
            } else if i >= a.dim && j >= a.dim {
                v[a.dim..].clone_from_slice(&b.mul_basis(i - a.dim, j - a.dim));
            }
            v
        })
        .expect("product shapes")
    }

    pub fn opposite(&self) -> Self {
        Self::from_products(format!("{}^op", self.label), self.dim, self.unit.clone(), |i, j| self.mul_basis(j, i))
            .expect("opposite shapes")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    /// Structure constants as nested vectors `[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<F>>> {
        let d = self.dim;
        (0..d).map(|i| (0..d).map(|j| self.mul_basis(i, j)).collect()).collect()
    }

    /// Same table and unit; labels are ignored.
    pub fn same_table(&self, other: &Self) -> bool {
        self.dim == other.dim && self.consts == other.consts && self.unit == other.unit
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        v
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<F> {
        let s = (i * self.dim + j) * self.dim;
        self.consts[s..s + self.dim].to_vec()
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let d = self.dim;
        let mut out = vec![F::zero(); d];
        for i in (0..d).filter(|&i| !a[i].is_zero()) {
            for j in (0..d).filter(|&j| !b[j].is_zero()) {
                let mut ab = a[i].clone();
                ab *= &b[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        let mut t = c.clone();
                        t *= &ab;
                        *o += &t;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x -> e_i x`.
    pub fn left_mult(&self, i: usize) -> Matrix<F> {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for k in 0..d {
                m[(k, j)] = self.constant(i, j, k).clone();
            }
        }
        m
    }

    /// Matrix of `x -> x e_i`.
    pub fn right_mult(&self, i: usize) -> Matrix<F> {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for k in 0..d {
                m[(k, j)] = self.constant(j, i, k).clone();
            }
        }
        m
    }

    /// Associativity and two-sided unit, checked on basis elements.
    pub fn validate(&self) -> Findings {
        let d = self.dim;
        let mut out = Vec::new();
        let left: Vec<_> = (0..d).map(|i| self.left_mult(i)).collect();
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul_basis(i, j);
                let lhs = Matrix::combination(d, d, &ij, &left);
                if lhs != left[i].mul(&left[j]) {
                    out.push(Violation::new(
                        "algebra.associativity",
                        format!("{}: (e{i} e{j}) x", self.label),
                        "(e_i e_j) x != e_i (e_j x) for some basis x",
                    ));
                }
            }
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                out.push(Violation::new("algebra.unit", format!("{}: e{i}", self.label), "unit does not act as identity"));
            }
        }
        out
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<F>> {
        let d = self.dim;
        let mut eqs = Matrix::zeros(0, d);
        for i in 0..d {
            eqs = eqs.vstack(&self.right_mult(i).sub(&self.left_mult(i)));
        }
        kernel_basis(&eqs)
    }

    /// Solves for a two-sided unit; `None` if there is none.
    pub fn find_unit(dim: usize, consts: &[Vec<Vec<F>>]) -> Option<Vec<F>> {
        let mut a = Matrix::zeros(2 * dim * dim, dim);
        let mut b = vec![F::zero(); 2 * dim * dim];
        for j in 0..dim {
            for k in 0..dim {
                for u in 0..dim {
                    a[(j * dim + k, u)] = consts[u][j][k].clone();
                    a[(dim * dim + j * dim + k, u)] = consts[j][u][k].clone();
                }
                if j == k {
                    b[j * dim + k] = F::one();
                    b[dim * dim + j * dim + k] = F::one();
                }
            }
        }
        solve_linear(&a, &b).ok().flatten()
    }
}

/// Whether `phi` (columns are images of basis vectors) is a unital algebra
/// isomorphism `a -> b`.
pub fn is_algebra_isomorphism<F: Field>(a: &Algebra<F>, b: &Algebra<F>, phi: &Matrix<F>) -> bool {
    if phi.shape() != (b.dim(), a.dim()) || inverse(phi).is_none() {
        return false;
    }
    if phi.apply(a.unit()) != b.unit() {
        return false;
    }
    let images: Vec<Vec<F>> = phi.columns();
    (0..a.dim()).all(|i| {
        (0..a.dim()).all(|j| phi.apply(&a.mul_basis(i, j)) == b.mul(&images[i], &images[j]))
    })
}
