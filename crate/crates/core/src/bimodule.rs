use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{dim_err, Error, Result};
use crate::linalg::{inverse, kernel_basis};
use crate::matrix::Matrix;
use crate::report::{Findings, Violation};
use crate::scalar::Field;

/// `(A, B)`-bimodule: a left action matrix for every basis element of `A` and
/// a right action matrix for every basis element of `B`.
///
/// Right actions compose contravariantly: `R(b) R(b') = R(b' b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule<F> {
    left: Arc<Algebra<F>>,
    right: Arc<Algebra<F>>,
    dim: usize,
    left_action: Vec<Matrix<F>>,
    right_action: Vec<Matrix<F>>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        left: Arc<Algebra<F>>,
        right: Arc<Algebra<F>>,
        dim: usize,
        left_action: Vec<Matrix<F>>,
        right_action: Vec<Matrix<F>>,
    ) -> Result<Self> {
        if left_action.len() != left.dim() || right_action.len() != right.dim() {
            return Err(dim_err("one action matrix per basis element is required"));
        }
        if left_action.iter().chain(&right_action).any(|m| m.shape() != (dim, dim)) {
            return Err(dim_err(format!("action matrices must be {dim}x{dim}")));
        }
        Ok(Bimodule { left, right, dim, left_action, right_action })
    }

    /// `A` acting on itself from both sides.
    pub fn regular(a: &Arc<Algebra<F>>) -> Self {
        let d = a.dim();
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            dim: d,
            left_action: (0..d).map(|i| a.left_mult(i)).collect(),
            right_action: (0..d).map(|i| a.right_mult(i)).collect(),
        }
    }

    /// `A` as a right module over itself, i.e. a `(K, A)`-bimodule.
    pub fn right_regular(a: &Arc<Algebra<F>>) -> Self {
        let d = a.dim();
        let k = Arc::new(Algebra::ground());
        Bimodule {
            left: k,
            right: a.clone(),
            dim: d,
            left_action: vec![Matrix::identity(d)],
            right_action: (0..d).map(|i| a.right_mult(i)).collect(),
        }
    }

    /// `A` as a left module over itself, i.e. an `(A, K)`-bimodule.
    pub fn left_regular(a: &Arc<Algebra<F>>) -> Self {
        let d = a.dim();
        let k = Arc::new(Algebra::ground());
        Bimodule {
            left: a.clone(),
            right: k,
            dim: d,
            left_action: (0..d).map(|i| a.left_mult(i)).collect(),
            right_action: vec![Matrix::identity(d)],
        }
    }

    /// Left `A`-module as an `(A, K)`-bimodule.
    pub fn left_module(a: &Arc<Algebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        Self::new(a.clone(), Arc::new(Algebra::ground()), dim, action, vec![Matrix::identity(dim)])
    }

    /// Right `A`-module as a `(K, A)`-bimodule.
    pub fn right_module(a: &Arc<Algebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        Self::new(Arc::new(Algebra::ground()), a.clone(), dim, vec![Matrix::identity(dim)], action)
    }

    /// `K^n` as a `(K, K)`-bimodule.
    pub fn vector_space(n: usize) -> Self {
        let k = Arc::new(Algebra::ground());
        Bimodule {
            left: k.clone(),
            right: k,
            dim: n,
            left_action: vec![Matrix::identity(n)],
            right_action: vec![Matrix::identity(n)],
        }
    }

    pub fn zero(left: &Arc<Algebra<F>>, right: &Arc<Algebra<F>>) -> Self {
        Bimodule {
            left: left.clone(),
            right: right.clone(),
            dim: 0,
            left_action: vec![Matrix::zeros(0, 0); left.dim()],
            right_action: vec![Matrix::zeros(0, 0); right.dim()],
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !self.left.same_table(&other.left) || !self.right.same_table(&other.right) {
            return Err(Error::AlgebraMismatch("direct sum of bimodules over different algebras".into()));
        }
        let sum = |a: &[Matrix<F>], b: &[Matrix<F>]| a.iter().zip(b).map(|(x, y)| x.direct_sum(y)).collect();
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: self.dim + other.dim,
            left_action: sum(&self.left_action, &other.left_action),
            right_action: sum(&self.right_action, &other.right_action),
        })
    }

    /// Transports the structure along the basis change `p`, i.e. `X -> p X p^-1`.
    pub fn conjugate(&self, p: &Matrix<F>) -> Result<Self> {
        let pinv = inverse(p).ok_or_else(|| Error::NotInvertible("basis change".into()))?;
        if p.shape() != (self.dim, self.dim) {
            return Err(dim_err("basis change has wrong size"));
        }
        let conj = |ms: &[Matrix<F>]| ms.iter().map(|m| p.mul(m).mul(&pinv)).collect();
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: self.dim,
            left_action: conj(&self.left_action),
            right_action: conj(&self.right_action),
        })
    }

    pub fn left_algebra(&self) -> &Arc<Algebra<F>> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra<F>> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self) -> &[Matrix<F>] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[Matrix<F>] {
        &self.right_action
    }

    /// Action of an arbitrary element of the left algebra.
    pub fn left_by(&self, a: &[F]) -> Matrix<F> {
        Matrix::combination(self.dim, self.dim, a, &self.left_action)
    }

    pub fn right_by(&self, b: &[F]) -> Matrix<F> {
        Matrix::combination(self.dim, self.dim, b, &self.right_action)
    }

    /// Module axioms for both actions and their commutation.
    pub fn validate(&self) -> Findings {
        let mut out = Vec::new();
        let n = self.dim;
        let (a, b) = (&self.left, &self.right);
        let id = Matrix::identity(n);
        if self.left_by(a.unit()) != id {
            out.push(Violation::new("bimodule.left_unit", a.label(), "unit of the left algebra does not act as identity"));
        }
        if self.right_by(b.unit()) != id {
            out.push(Violation::new("bimodule.right_unit", b.label(), "unit of the right algebra does not act as identity"));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if self.left_action[i].mul(&self.left_action[j]) != self.left_by(&a.mul_basis(i, j)) {
                    out.push(Violation::new("bimodule.left_mult", format!("(e{i}, e{j})"), "L(e_i) L(e_j) != L(e_i e_j)"));
                }
            }
        }
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                if self.right_action[j].mul(&self.right_action[i]) != self.right_by(&b.mul_basis(i, j)) {
                    out.push(Violation::new("bimodule.right_mult", format!("(e{i}, e{j})"), "R(e_j) R(e_i) != R(e_i e_j)"));
                }
            }
        }
        for (i, l) in self.left_action.iter().enumerate() {
            for (j, r) in self.right_action.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    out.push(Violation::new("bimodule.commute", format!("(e{i}, e{j})"), "left and right actions do not commute"));
                }
            }
        }
        out
    }
}

/// All `t` (shape `tgt_dim x src_dim`) with `t s = s' t` for each pair `(s, s')`.
pub fn intertwiner_space<F: Field>(src_dim: usize, tgt_dim: usize, pairs: &[(&Matrix<F>, &Matrix<F>)]) -> Vec<Matrix<F>> {
    let vars = tgt_dim * src_dim;
    let mut eqs = Matrix::zeros(pairs.len() * vars, vars);
    for (p, (s, t)) in pairs.iter().enumerate() {
        for r in 0..tgt_dim {
            for c in 0..src_dim {
                let row = p * vars + r * src_dim + c;
                for k in 0..src_dim {
                    let x = &s[(k, c)];
                    if !x.is_zero() {
                        eqs[(row, r * src_dim + k)] += x;
                    }
                }
                for k in 0..tgt_dim {
                    let x = &t[(r, k)];
                    if !x.is_zero() {
                        eqs[(row, k * src_dim + c)] -= x;
                    }
                }
            }
        }
    }
    kernel_basis(&eqs).into_iter().map(|v| Matrix::from_vec(tgt_dim, src_dim, v)).collect()
}

/// Basis of right-module maps `m -> n`.
pub fn hom_right_module_space<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Vec<Matrix<F>>> {
    if !m.right.same_table(&n.right) {
        return Err(Error::AlgebraMismatch("right algebras differ".into()));
    }
    let pairs: Vec<_> = m.right_action.iter().zip(&n.right_action).collect();
    Ok(intertwiner_space(m.dim, n.dim, &pairs))
}

/// Basis of left-module maps `m -> n`.
pub fn hom_left_module_space<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Vec<Matrix<F>>> {
    if !m.left.same_table(&n.left) {
        return Err(Error::AlgebraMismatch("left algebras differ".into()));
    }
    let pairs: Vec<_> = m.left_action.iter().zip(&n.left_action).collect();
    Ok(intertwiner_space(m.dim, n.dim, &pairs))
}

/// Basis of bimodule maps `m -> n`.
pub fn hom_bimodule_space<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<Vec<Matrix<F>>> {
    if !m.left.same_table(&n.left) || !m.right.same_table(&n.right) {
        return Err(Error::AlgebraMismatch("bimodules over different algebras".into()));
    }
    let pairs: Vec<_> = m.left_action.iter().zip(&n.left_action).chain(m.right_action.iter().zip(&n.right_action)).collect();
    Ok(intertwiner_space(m.dim, n.dim, &pairs))
}

/// Linear map between bimodules, expected to commute with both actions.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleMorphism<F> {
    pub source: Bimodule<F>,
    pub target: Bimodule<F>,
    pub matrix: Matrix<F>,
}

impl<F: Field> BimoduleMorphism<F> {
    pub fn new(source: Bimodule<F>, target: Bimodule<F>, matrix: Matrix<F>) -> Result<Self> {
        if matrix.shape() != (target.dim, source.dim) {
            return Err(dim_err(format!(
                "morphism matrix is {:?}, expected {}x{}",
                matrix.shape(),
                target.dim,
                source.dim
            )));
        }
        Ok(BimoduleMorphism { source, target, matrix })
    }

    pub fn identity(m: &Bimodule<F>) -> Self {
        BimoduleMorphism { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.dim) }
    }

    pub fn compose(&self, first: &Self) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::EndpointMismatch("composing morphisms with different middle bimodules".into()));
        }
        Ok(BimoduleMorphism { source: first.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&first.matrix) })
    }

    pub fn validate(&self) -> Findings {
        let (s, t, f) = (&self.source, &self.target, &self.matrix);
        let mut out = Vec::new();
        if !s.left.same_table(&t.left) || !s.right.same_table(&t.right) {
            out.push(Violation::new("morphism.algebras", "endpoints", "source and target are over different algebras"));
            return out;
        }
        for (i, (ls, lt)) in s.left_action.iter().zip(&t.left_action).enumerate() {
            if f.mul(ls) != lt.mul(f) {
                out.push(Violation::new("morphism.left_linear", format!("e{i}"), "does not commute with the left action"));
            }
        }
        for (i, (rs, rt)) in s.right_action.iter().zip(&t.right_action).enumerate() {
            if f.mul(rs) != rt.mul(f) {
                out.push(Violation::new("morphism.right_linear", format!("e{i}"), "does not commute with the right action"));
            }
        }
        out
    }

    pub fn is_isomorphism(&self) -> bool {
        self.validate().is_empty() && inverse(&self.matrix).is_some()
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = inverse(&self.matrix)?;
        Some(BimoduleMorphism { source: self.target.clone(), target: self.source.clone(), matrix: inv })
    }
}
