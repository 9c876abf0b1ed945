//! Balanced tensor products of bimodules and the coherence maps between them.

use crate::bimodule::{hom_right_module_space, Bimodule, BimoduleMorphism};
use crate::error::{Error, Result};
use crate::linalg::{inverse, quotient_with_section, solve_linear, Coordinates};
use crate::matrix::Matrix;
use crate::scalar::Field;
use std::sync::Arc;

/// `M (x)_B N` with the maps relating it to the plain tensor product.
///
/// Plain basis vectors `m_i (x) n_j` sit at index `i * dim(N) + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorResult<F> {
    pub product: Bimodule<F>,
    /// Plain tensor product onto the balanced one.
    pub factor: Matrix<F>,
    /// Right inverse of `factor`.
    pub section: Matrix<F>,
}

/// `M (x)_B N` for an `(A, B)`-bimodule `M` and a `(B, C)`-bimodule `N`.
///
/// The quotient basis is a deterministic function of the span of the
/// balancing relations, so equal inputs give identical outputs.
pub fn tensor_over<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<TensorResult<F>> {
    let b = m.right_algebra();
    if !b.same_table(n.left_algebra()) {
        return Err(Error::AlgebraMismatch(format!(
            "cannot tensor over {} and {}",
            b.label(),
            n.left_algebra().label()
        )));
    }
    let (dm, dn) = (m.dim(), n.dim());
    let mut relations = Vec::with_capacity(dm * dn * b.dim());
    for (r, l) in m.right_action().iter().zip(n.left_action()) {
        for i in 0..dm {
            for j in 0..dn {
                let mut v = vec![F::zero(); dm * dn];
                for p in 0..dm {
                    v[p * dn + j] += &r[(p, i)];
                }
                for s in 0..dn {
                    v[i * dn + s] -= &l[(s, j)];
                }
                relations.push(v);
            }
        }
    }
    let quotient = quotient_with_section(dm * dn, &relations)?;
    let (factor, section) = (quotient.projection, quotient.section);
    let q = factor.rows();
    let id_m = Matrix::identity(dm);
    let id_n = Matrix::identity(dn);
    let left = m.left_action().iter().map(|a| factor.mul(&a.kron(&id_n)).mul(&section)).collect();
    let right = n.right_action().iter().map(|c| factor.mul(&id_m.kron(c)).mul(&section)).collect();
    let product = Bimodule::new(m.left_algebra().clone(), n.right_algebra().clone(), q, left, right)?;
    Ok(TensorResult { product, factor, section })
}

/// `f (x) g` between balanced tensor products.
pub fn tensor_map<F: Field>(source: &TensorResult<F>, target: &TensorResult<F>, f: &Matrix<F>, g: &Matrix<F>) -> Matrix<F> {
    target.factor.mul(&f.kron(g)).mul(&source.section)
}

/// `f (x)_B g` as a bimodule morphism.
pub fn tensor_morphism<F: Field>(f: &BimoduleMorphism<F>, g: &BimoduleMorphism<F>) -> Result<BimoduleMorphism<F>> {
    let s = tensor_over(&f.source, &g.source)?;
    let t = tensor_over(&f.target, &g.target)?;
    let matrix = tensor_map(&s, &t, &f.matrix, &g.matrix);
    BimoduleMorphism::new(s.product, t.product, matrix)
}

/// Plain map `A (x) M -> M`, `a (x) m -> a m`.
pub fn left_action_map<F: Field>(m: &Bimodule<F>) -> Matrix<F> {
    let mut out = Matrix::zeros(m.dim(), 0);
    for l in m.left_action() {
        out = out.hstack(l);
    }
    out
}

/// Plain map `M (x) B -> M`, `m (x) b -> m b`.
pub fn right_action_map<F: Field>(m: &Bimodule<F>) -> Matrix<F> {
    let (d, k) = (m.dim(), m.right_action().len());
    let mut out = Matrix::zeros(d, d * k);
    for (b, r) in m.right_action().iter().enumerate() {
        for i in 0..d {
            for p in 0..d {
                out[(p, i * k + b)] = r[(p, i)].clone();
            }
        }
    }
    out
}

/// `A (x)_A M -> M`.
pub fn unitor_left<F: Field>(m: &Bimodule<F>) -> Result<BimoduleMorphism<F>> {
    let t = tensor_over(&Bimodule::regular(m.left_algebra()), m)?;
    let matrix = left_action_map(m).mul(&t.section);
    BimoduleMorphism::new(t.product, m.clone(), matrix)
}

/// `M (x)_B B -> M`.
pub fn unitor_right<F: Field>(m: &Bimodule<F>) -> Result<BimoduleMorphism<F>> {
    let t = tensor_over(m, &Bimodule::regular(m.right_algebra()))?;
    let matrix = right_action_map(m).mul(&t.section);
    BimoduleMorphism::new(t.product, m.clone(), matrix)
}

/// `(M (x) N) (x) P -> M (x) (N (x) P)`.
pub fn associator<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, p: &Bimodule<F>) -> Result<BimoduleMorphism<F>> {
    let mn = tensor_over(m, n)?;
    let np = tensor_over(n, p)?;
    let left = tensor_over(&mn.product, p)?;
    let right = tensor_over(m, &np.product)?;
    let lift = mn.section.kron(&Matrix::identity(p.dim()));
    let push = Matrix::identity(m.dim()).kron(&np.factor);
    let matrix = right.factor.mul(&push).mul(&lift).mul(&left.section);
    BimoduleMorphism::new(left.product, right.product, matrix)
}

/// Both sides of the pentagon, as maps `((MN)P)Q -> M(N(PQ))`.
pub fn pentagon_sides<F: Field>(
    m: &Bimodule<F>,
    n: &Bimodule<F>,
    p: &Bimodule<F>,
    q: &Bimodule<F>,
) -> Result<(BimoduleMorphism<F>, BimoduleMorphism<F>)> {
    let mn = tensor_over(m, n)?.product;
    let np = tensor_over(n, p)?.product;
    let pq = tensor_over(p, q)?.product;
    let top = associator(m, n, &pq)?.compose(&associator(&mn, p, q)?)?;
    let first = tensor_morphism(&associator(m, n, p)?, &BimoduleMorphism::identity(q))?;
    let second = associator(m, &np, q)?;
    let third = tensor_morphism(&BimoduleMorphism::identity(m), &associator(n, p, q)?)?;
    let bottom = third.compose(&second.compose(&first)?)?;
    Ok((top, bottom))
}

pub fn pentagon_holds<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, p: &Bimodule<F>, q: &Bimodule<F>) -> Result<bool> {
    let (top, bottom) = pentagon_sides(m, n, p, q)?;
    Ok(top.matrix == bottom.matrix)
}

/// `(id (x) unitor_left) . associator == unitor_right (x) id` on `(M B) N`.
pub fn triangle_holds<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<bool> {
    let b = Bimodule::regular(m.right_algebra());
    let lhs = tensor_morphism(&BimoduleMorphism::identity(m), &unitor_left(n)?)?.compose(&associator(m, &b, n)?)?;
    let rhs = tensor_morphism(&unitor_right(m)?, &BimoduleMorphism::identity(n))?;
    Ok(lhs.source == rhs.source && lhs.matrix == rhs.matrix)
}

/// Witness that an `(A, B)`-bimodule is invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct Invertibility<F> {
    /// `Hom_B(M, B)` as a `(B, A)`-bimodule.
    pub inverse: Bimodule<F>,
    /// `M* (x)_A M -> B`.
    pub ev: BimoduleMorphism<F>,
    /// `A -> M (x)_B M*`.
    pub coev: BimoduleMorphism<F>,
}

/// The dual `Hom_B(M, B)` together with its basis of maps `M -> B`.
pub fn right_dual<F: Field>(m: &Bimodule<F>) -> Result<(Bimodule<F>, Vec<Matrix<F>>)> {
    let (a, b) = (m.left_algebra(), m.right_algebra());
    let target = Bimodule::right_regular(b);
    let basis = hom_right_module_space(m, &target)?;
    let flat: Vec<Vec<F>> = basis.iter().map(|x| x.entries().to_vec()).collect();
    let coords = Coordinates::new(b.dim() * m.dim(), &flat)?;
    let k = basis.len();
    let express = |maps: Vec<Matrix<F>>| -> Result<Matrix<F>> {
        let cols = maps
            .iter()
            .map(|x| coords.of(x.entries()).ok_or_else(|| Error::InvalidData("dual action leaves the dual".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(k, &cols))
    };
    let left = (0..b.dim())
        .map(|i| express(basis.iter().map(|phi| b.left_mult(i).mul(phi)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let right = m.left_action().iter().map(|l| express(basis.iter().map(|phi| phi.mul(l)).collect())).collect::<Result<Vec<_>>>()?;
    Ok((Bimodule::new(b.clone(), a.clone(), k, left, right)?, basis))
}

/// Returns evaluation and coevaluation isomorphisms when `M` is invertible.
///
/// The coevaluation is found by solving for the dual-basis element of
/// `M (x)_B M*` that maps to the identity of `M`; if that system has no
/// solution, or either map is not bijective, the result is `None`.
pub fn invertibility_check<F: Field>(m: &Bimodule<F>) -> Result<Option<Invertibility<F>>> {
    let (dual, maps) = right_dual(m)?;
    let (a, b) = (m.left_algebra(), m.right_algebra());
    let (dm, k) = (m.dim(), maps.len());

    let te = tensor_over(&dual, m)?;
    let mut plain_ev = Matrix::zeros(b.dim(), k * dm);
    for (s, phi) in maps.iter().enumerate() {
        for j in 0..dm {
            for r in 0..b.dim() {
                plain_ev[(r, s * dm + j)] = phi[(r, j)].clone();
            }
        }
    }
    let ev = BimoduleMorphism::new(te.product.clone(), Bimodule::regular(b), plain_ev.mul(&te.section))?;

    let tc = tensor_over(m, &dual)?;
    let mut theta = Matrix::zeros(dm * dm, dm * k);
    for i in 0..dm {
        for (s, phi) in maps.iter().enumerate() {
            for (kb, r) in m.right_action().iter().enumerate() {
                for p in 0..dm {
                    let rp = &r[(p, i)];
                    if rp.is_zero() {
                        continue;
                    }
                    for x in 0..dm {
                        let mut t = phi[(kb, x)].clone();
                        t *= rp;
                        theta[(p * dm + x, i * k + s)] += &t;
                    }
                }
            }
        }
    }
    let theta = theta.mul(&tc.section);
    let Some(c) = solve_linear(&theta, Matrix::<F>::identity(dm).entries())? else {
        return Ok(None);
    };
    let coev_cols: Vec<Vec<F>> = tc.product.left_action().iter().map(|l| l.apply(&c)).collect();
    let coev = BimoduleMorphism::new(Bimodule::regular(a), tc.product.clone(), Matrix::from_columns(tc.product.dim(), &coev_cols))?;

    let iso = |f: &BimoduleMorphism<F>| f.validate().is_empty() && inverse(&f.matrix).is_some();
    if !iso(&ev) || !iso(&coev) {
        return Ok(None);
    }
    Ok(Some(Invertibility { inverse: dual, ev, coev }))
}

/// `K^n` with a column `M_n`-action, as an `(M_n, K)`-bimodule.
pub fn column_module<F: Field>(mn: &Arc<crate::algebra::Algebra<F>>, n: usize) -> Result<Bimodule<F>> {
    Bimodule::left_module(mn, n, (0..n * n).map(|e| unit_matrix(n, e / n, e % n)).collect())
}

/// `K^n` with a row `M_n`-action, as a `(K, M_n)`-bimodule.
pub fn row_module<F: Field>(mn: &Arc<crate::algebra::Algebra<F>>, n: usize) -> Result<Bimodule<F>> {
    Bimodule::right_module(mn, n, (0..n * n).map(|e| unit_matrix(n, e / n, e % n).transpose()).collect())
}

fn unit_matrix<F: Field>(n: usize, r: usize, c: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(n, n);
    m[(r, c)] = F::one();
    m
}
