//! Simplices in the nerve of the bicategory of algebras and bimodules.
//!
//! An edge `i -> j` is a `(A_j, A_i)`-bimodule, so a composite `g . f` is
//! `J(g) (x) J(f)` and a 2-simplex filler maps `M_jk (x) M_ij -> M_ik`.

use crate::bimodule::{Bimodule, BimoduleMorphism};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::{Findings, Violation};
use crate::scalar::Field;
use crate::tensor::{associator, tensor_morphism, tensor_over, unitor_left, unitor_right};

#[derive(Debug)]
pub struct TwoSimplex<'a, F> {
    pub m_ij: &'a Bimodule<F>,
    pub m_jk: &'a Bimodule<F>,
    pub m_ik: &'a Bimodule<F>,
    pub filler: &'a Matrix<F>,
}

impl<F> Clone for TwoSimplex<'_, F> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<F> Copy for TwoSimplex<'_, F> {}

/// Faces `d0 = (jkl)`, `d1 = (ikl)`, `d2 = (ijl)`, `d3 = (ijk)`.
#[derive(Debug)]
pub struct ThreeSimplex<'a, F> {
    pub faces: [TwoSimplex<'a, F>; 4],
}

/// Corner compatibility and bimodule linearity of the filler.
pub fn check_2simplex<F: Field>(s: &TwoSimplex<'_, F>) -> Findings {
    let corners_ok = s.m_jk.right_algebra().same_table(s.m_ij.left_algebra())
        && s.m_ik.left_algebra().same_table(s.m_jk.left_algebra())
        && s.m_ik.right_algebra().same_table(s.m_ij.right_algebra());
    if !corners_ok {
        return vec![Violation::new("simplex.corners", "edges", "edge bimodules do not share corner algebras")];
    }
    let t = match tensor_over(s.m_jk, s.m_ij) {
        Ok(t) => t,
        Err(e) => return vec![Violation::new("simplex.corners", "edges", e.to_string())],
    };
    match BimoduleMorphism::new(t.product, s.m_ik.clone(), s.filler.clone()) {
        Ok(f) => f.validate().into_iter().map(|v| Violation::new(format!("simplex.{}", v.check), v.location, v.detail)).collect(),
        Err(e) => vec![Violation::new("simplex.filler_shape", "filler", e.to_string())],
    }
}

fn same_edge<F: Field>(a: &Bimodule<F>, b: &Bimodule<F>, name: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::EndpointMismatch(format!("faces disagree on edge {name}")))
    }
}

/// Both composites `M_kl (x) M_jk (x) M_ij -> M_il`, on the plain triple tensor product.
fn check_boundaries<F: Field>(s: &ThreeSimplex<'_, F>) -> Result<()> {
    let [d0, d1, d2, d3] = &s.faces;
    same_edge(d3.m_jk, d0.m_ij, "jk")?;
    same_edge(d3.m_ik, d1.m_ij, "ik")?;
    same_edge(d0.m_jk, d1.m_jk, "kl")?;
    same_edge(d0.m_ik, d2.m_jk, "jl")?;
    same_edge(d1.m_ik, d2.m_ik, "il")?;
    same_edge(d2.m_ij, d3.m_ij, "ij")
}

pub fn tetrahedron_routes<F: Field>(s: &ThreeSimplex<'_, F>) -> Result<(Matrix<F>, Matrix<F>)> {
    check_boundaries(s)?;
    let [d0, d1, d2, d3] = &s.faces;
    let (m_ij, m_jk, m_kl) = (d3.m_ij, d3.m_jk, d0.m_jk);
    let t_jk_ij = tensor_over(m_jk, m_ij)?;
    let t_kl_jk = tensor_over(m_kl, m_jk)?;
    let t_kl_ik = tensor_over(m_kl, d3.m_ik)?;
    let t_jl_ij = tensor_over(d0.m_ik, m_ij)?;
    let inner = Matrix::identity(m_kl.dim()).kron(&d3.filler.mul(&t_jk_ij.factor));
    let via_ik = d1.filler.mul(&t_kl_ik.factor).mul(&inner);
    let outer = d0.filler.mul(&t_kl_jk.factor).kron(&Matrix::identity(m_ij.dim()));
    let via_jl = d2.filler.mul(&t_jl_ij.factor).mul(&outer);
    Ok((via_ik, via_jl))
}

/// Face checks plus the tetrahedron identity.
pub fn check_3simplex<F: Field>(s: &ThreeSimplex<'_, F>) -> Result<Findings> {
    check_boundaries(s)?;
    let mut out = Vec::new();
    for (k, face) in s.faces.iter().enumerate() {
        out.extend(check_2simplex(face).into_iter().map(|v| Violation::new(v.check, format!("face d{k}: {}", v.location), v.detail)));
    }
    if !out.is_empty() {
        return Ok(out);
    }
    let (a, b) = tetrahedron_routes(s)?;
    if a != b {
        out.push(Violation::new("simplex.tetrahedron", "faces", "the two composites around the 3-simplex differ"));
    }
    Ok(out)
}

/// Square in the loop space of 2Vect: vertical edges `V0`, `V1`, horizontal
/// edges `bottom` and `top` equal to `K`, filler `bottom (x) V0 -> V1 (x) top`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopSquare<F> {
    pub v0: Bimodule<F>,
    pub v1: Bimodule<F>,
    pub filler: Matrix<F>,
}

impl<F: Field> LoopSquare<F> {
    fn unit() -> Bimodule<F> {
        Bimodule::vector_space(1)
    }

    pub fn validate(&self) -> Findings {
        let k = Self::unit();
        let mut out = Vec::new();
        for (name, v) in [("v0", &self.v0), ("v1", &self.v1)] {
            if v.left_algebra().dim() != 1 || v.right_algebra().dim() != 1 || !v.validate().is_empty() {
                out.push(Violation::new("loop.edge", name, "vertical edge must be a (K, K)-bimodule"));
            }
        }
        if out.is_empty() {
            out.extend(check_2simplex(&TwoSimplex { m_ij: &self.v0, m_jk: &k, m_ik: &self.v0, filler: &Matrix::identity(self.v0.dim()) }));
            let dims_ok = self.filler.shape() == (self.v1.dim(), self.v0.dim());
            if !dims_ok {
                out.push(Violation::new("loop.filler", "filler", "filler must map K (x) V0 to V1 (x) K"));
            }
        }
        out
    }

    /// Collapses the horizontal edges with the unitors.
    pub fn to_linear(&self) -> Result<Matrix<F>> {
        let lam = unitor_left(&self.v0)?;
        let rho = unitor_right(&self.v1)?;
        let lam_inv = lam.inverse().ok_or_else(|| Error::NotInvertible("left unitor".into()))?;
        Ok(rho.matrix.mul(&self.filler).mul(&lam_inv.matrix))
    }
}

/// Pastes `first: V0 -> V1` and `second: V1 -> V2` along `V1`.
///
/// Horizontal edges compose to `K (x) K`, which is collapsed back to `K`
/// by the multiplication map.
pub fn paste_loops<F: Field>(first: &LoopSquare<F>, second: &LoopSquare<F>) -> Result<LoopSquare<F>> {
    if first.v1 != second.v0 {
        return Err(Error::EndpointMismatch("squares do not share a vertical edge".into()));
    }
    let k = LoopSquare::<F>::unit();
    let id_k = BimoduleMorphism::identity(&k);
    let mu = unitor_left(&k)?;
    let mu_inv = mu.inverse().ok_or_else(|| Error::NotInvertible("unitor".into()))?;
    let id0 = BimoduleMorphism::identity(&first.v0);
    let id2 = BimoduleMorphism::identity(&second.v1);

    let phi01 = BimoduleMorphism::new(tensor_over(&k, &first.v0)?.product, tensor_over(&first.v1, &k)?.product, first.filler.clone())?;
    let phi12 = BimoduleMorphism::new(tensor_over(&k, &second.v0)?.product, tensor_over(&second.v1, &k)?.product, second.filler.clone())?;

    let steps = [
        tensor_morphism(&mu_inv, &id0)?,
        associator(&k, &k, &first.v0)?,
        tensor_morphism(&id_k, &phi01)?,
        associator(&k, &first.v1, &k)?.inverse().ok_or_else(|| Error::NotInvertible("associator".into()))?,
        tensor_morphism(&phi12, &id_k)?,
        associator(&second.v1, &k, &k)?,
        tensor_morphism(&id2, &mu)?,
    ];
    let mut acc = steps[0].clone();
    for s in &steps[1..] {
        acc = s.compose(&acc)?;
    }
    Ok(LoopSquare { v0: first.v0.clone(), v1: second.v1.clone(), filler: acc.matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::scalar::{frac, q, Rational};
    use std::sync::Arc;

    type Q = Rational;

    fn scalar(x: Q) -> Matrix<Q> {
        Matrix::from_rows(vec![vec![x]])
    }

    #[test]
    fn scalar_tetrahedron_follows_cocycle_identity() {
        let k = Bimodule::<Q>::vector_space(1);
        fn face<'a>(k: &'a Bimodule<Q>, x: &'a Matrix<Q>) -> TwoSimplex<'a, Q> {
            TwoSimplex { m_ij: k, m_jk: k, m_ik: k, filler: x }
        }
        let (a, b, c, d) = (scalar(q(2)), scalar(q(3)), scalar(q(5)), scalar(frac(10, 3)));
        let good = ThreeSimplex { faces: [face(&k, &a), face(&k, &b), face(&k, &c), face(&k, &d)] };
        assert!(check_3simplex(&good).unwrap().is_empty());
        let e = scalar(q(7));
        let bad = ThreeSimplex { faces: [face(&k, &a), face(&k, &b), face(&k, &c), face(&k, &e)] };
        assert_eq!(check_3simplex(&bad).unwrap()[0].check, "simplex.tetrahedron");
    }

    #[test]
    fn multiplication_is_a_filler() {
        let a = Arc::new(Algebra::<Q>::matrix_algebra(2));
        let r = Bimodule::regular(&a);
        let mu = unitor_left(&r).unwrap().matrix;
        assert!(check_2simplex(&TwoSimplex { m_ij: &r, m_jk: &r, m_ik: &r, filler: &mu }).is_empty());
        let bad = mu.scale(&q(0)).add(&Matrix::from_vec(4, 4, (0..16).map(|i| q(i % 3)).collect()));
        assert!(!check_2simplex(&TwoSimplex { m_ij: &r, m_jk: &r, m_ik: &r, filler: &bad }).is_empty());
    }

    #[test]
    fn mismatched_faces_are_errors() {
        let k1 = Bimodule::<Q>::vector_space(1);
        let k2 = Bimodule::<Q>::vector_space(2);
        let x = scalar(q(1));
        let f = TwoSimplex { m_ij: &k1, m_jk: &k1, m_ik: &k1, filler: &x };
        let g = TwoSimplex { m_ij: &k2, m_jk: &k1, m_ik: &k1, filler: &x };
        assert!(check_3simplex(&ThreeSimplex { faces: [g, f, f, f] }).is_err());
    }

    #[test]
    fn pasting_multiplies_linear_maps() {
        let v = |n| Bimodule::<Q>::vector_space(n);
        let s1 = LoopSquare { v0: v(2), v1: v(3), filler: Matrix::from_vec(3, 2, (1..=6).map(q).collect()) };
        let s2 = LoopSquare { v0: v(3), v1: v(1), filler: Matrix::from_vec(1, 3, vec![q(1), q(-1), frac(1, 2)]) };
        assert!(s1.validate().is_empty() && s2.validate().is_empty());
        let pasted = paste_loops(&s1, &s2).unwrap();
        assert_eq!(pasted.to_linear().unwrap(), s2.to_linear().unwrap().mul(&s1.to_linear().unwrap()));
        assert!(paste_loops(&s2, &s1).is_err());
    }
}
