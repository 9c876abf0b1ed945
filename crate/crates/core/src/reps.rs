//! Alpha-structures, anomalous representations and projective representations,
//! with the constructions passing between them.

use std::sync::Arc;

use crate::anomaly::AnomalyFunctor;
use crate::bimodule::Bimodule;
use crate::category::FinCategory;
use crate::cocycle::{coboundary, same_category, Cochain1, Cocycle2};
use crate::error::{Error, Result};
use crate::linalg::{inverse, solve_linear};
use crate::matrix::Matrix;
use crate::report::{Findings, Violation};
use crate::scalar::Rational;
use crate::tensor::{associator, invertibility_check, left_action_map, right_dual, tensor_map, tensor_over};
use crate::{QBimodule, QMatrix};
use num_traits::Zero;

fn same_anomaly(a: &Arc<AnomalyFunctor>, b: &Arc<AnomalyFunctor>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn retag(out: &mut Findings, prefix: &str, loc: &str, found: Findings) {
    out.extend(found.into_iter().map(|v| Violation::new(format!("{prefix}.{}", v.check), format!("{loc}: {}", v.location), v.detail)));
}

/// `(id (x) J(Xi)) . (phi_g (x) id) . phi_f : L_i -> L_k (x) J(g . f)` for
/// `phi_f: L_i -> L_j (x) J(f)` and `phi_g: L_j -> L_k (x) J(g)`.
pub fn lax_composite(
    j: &AnomalyFunctor,
    g: usize,
    f: usize,
    l_j: &QBimodule,
    l_k: &QBimodule,
    phi_f: &QMatrix,
    phi_g: &QMatrix,
) -> Result<QMatrix> {
    let c = j.category();
    let gf = c.compose(g, f).ok_or(Error::NotComposable(g, f))?;
    let t_jf = tensor_over(l_j, j.bimodule(f))?;
    let t_kg = tensor_over(l_k, j.bimodule(g))?;
    let t_kgf = tensor_over(l_k, j.bimodule(gf))?;
    let xi = j.intertwiner(g, f).mul(&j.composite(g, f).factor);
    let plain = t_jf.section.mul(phi_f);
    let plain = t_kg.section.mul(phi_g).kron(&Matrix::identity(j.bimodule(f).dim())).mul(&plain);
    let plain = Matrix::identity(l_k.dim()).kron(&xi).mul(&plain);
    Ok(t_kgf.factor.mul(&plain))
}

/// Right-linearity of `phi: L -> L' (x) J(f)` over `J(source f)`.
pub(crate) fn check_twisted_map(j: &AnomalyFunctor, f: usize, l: &QBimodule, l_target: &QBimodule, phi: &QMatrix) -> Result<Findings> {
    let t = tensor_over(l_target, j.bimodule(f))?;
    if phi.shape() != (t.product.dim(), l.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "map is {:?}, expected {}x{}",
            phi.shape(),
            t.product.dim(),
            l.dim()
        )));
    }
    let mut out = Vec::new();
    for (a, (rs, rt)) in l.right_action().iter().zip(t.product.right_action()).enumerate() {
        if phi.mul(rs) != rt.mul(phi) {
            out.push(Violation::new("right_linear", format!("e{a}"), "map does not commute with the right action"));
        }
    }
    Ok(out)
}

/// Objects to `(K, J(X))`-bimodules and morphisms to right-linear maps
/// `xi(f): xi(X_i) -> xi(X_j) (x) J(f)`, lax up to `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaStructure {
    anomaly: Arc<AnomalyFunctor>,
    alpha: Cocycle2,
    obj_mod: Vec<QBimodule>,
    mor_map: Vec<QMatrix>,
}

impl AlphaStructure {
    pub fn new(anomaly: Arc<AnomalyFunctor>, alpha: Cocycle2, obj_mod: Vec<QBimodule>, mor_map: Vec<QMatrix>) -> Result<Self> {
        let c = anomaly.category().clone();
        if !same_category(&c, alpha.category()) {
            return Err(Error::CategoryMismatch);
        }
        if obj_mod.len() != c.num_objects() || mor_map.len() != c.num_morphisms() {
            return Err(Error::DimensionMismatch("one module per object and one map per morphism".into()));
        }
        for (x, m) in obj_mod.iter().enumerate() {
            if m.left_algebra().dim() != 1 || !m.right_algebra().same_table(anomaly.algebra(x)) {
                return Err(Error::AlgebraMismatch(format!("xi({}) must be a (K, J(X))-bimodule", c.objects()[x])));
            }
        }
        for (f, phi) in mor_map.iter().enumerate() {
            let t = tensor_over(&obj_mod[c.target(f)], anomaly.bimodule(f))?;
            if phi.shape() != (t.product.dim(), obj_mod[c.source(f)].dim()) {
                return Err(Error::DimensionMismatch(format!("xi({}) has the wrong shape", c.label(f))));
            }
        }
        Ok(AlphaStructure { anomaly, alpha, obj_mod, mor_map })
    }

    pub fn anomaly(&self) -> &Arc<AnomalyFunctor> {
        &self.anomaly
    }

    pub fn alpha(&self) -> &Cocycle2 {
        &self.alpha
    }

    pub fn module(&self, x: usize) -> &QBimodule {
        &self.obj_mod[x]
    }

    pub fn modules(&self) -> &[QBimodule] {
        &self.obj_mod
    }

    pub fn map(&self, f: usize) -> &QMatrix {
        &self.mor_map[f]
    }

    pub fn maps(&self) -> &[QMatrix] {
        &self.mor_map
    }

    /// Module axioms, right-linearity and
    /// `alpha(g,f) xi(g.f) = (id (x) J(Xi)) (xi(g) (x) id) xi(f)`.
    pub fn validate(&self) -> Findings {
        let j = &self.anomaly;
        let c = j.category();
        let mut out = Vec::new();
        retag(&mut out, "alpha_structure", "alpha", self.alpha.validate());
        for (x, m) in self.obj_mod.iter().enumerate() {
            retag(&mut out, "alpha_structure", &format!("xi({})", c.objects()[x]), m.validate());
        }
        if !out.is_empty() {
            return out;
        }
        for (f, phi) in self.mor_map.iter().enumerate() {
            let loc = format!("xi({})", c.label(f));
            match check_twisted_map(j, f, &self.obj_mod[c.source(f)], &self.obj_mod[c.target(f)], phi) {
                Ok(found) => retag(&mut out, "alpha_structure", &loc, found),
                Err(e) => out.push(Violation::new("alpha_structure.shape", loc, e.to_string())),
            }
        }
        for (g, f) in c.composable_pairs() {
            let gf = c.comp(g, f);
            let (lj, lk) = (&self.obj_mod[c.target(f)], &self.obj_mod[c.target(g)]);
            let rhs = lax_composite(j, g, f, lj, lk, &self.mor_map[f], &self.mor_map[g]);
            let lhs = self.mor_map[gf].scale(self.alpha.value(g, f));
            match rhs {
                Ok(r) if r == lhs => {}
                Ok(_) => out.push(Violation::new("alpha_structure.square", c.pair_label(g, f), "lax composition differs from alpha * xi(g.f)")),
                Err(e) => out.push(Violation::new("alpha_structure.square", c.pair_label(g, f), e.to_string())),
            }
        }
        out
    }

    /// Every `xi(X)` is an invertible bimodule and every `xi(f)` is bijective.
    pub fn is_invertible(&self) -> Result<bool> {
        for m in &self.obj_mod {
            if invertibility_check(m)?.is_none() {
                return Ok(false);
            }
        }
        Ok(self.mor_map.iter().all(|m| inverse(m).is_some()))
    }
}

/// The alpha-structure of `J_alpha` with every module `K` and every map the identity.
pub fn canonical_alpha_structure(anomaly: Arc<AnomalyFunctor>, alpha: &Cocycle2) -> Result<AlphaStructure> {
    let c = anomaly.category().clone();
    let obj = (0..c.num_objects()).map(|x| Bimodule::right_regular(anomaly.algebra(x))).collect::<Vec<_>>();
    if anomaly.algebras().iter().any(|a| a.dim() != 1) {
        return Err(Error::InvalidData("canonical alpha-structure needs one-dimensional algebras".into()));
    }
    let maps = vec![Matrix::identity(1); c.num_morphisms()];
    AlphaStructure::new(anomaly, alpha.clone(), obj, maps)
}

/// Objects to `(J(X), K)`-bimodules and morphisms to left-linear maps
/// `Z(f): J(f) (x) Z(X_i) -> Z(X_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnomalousRep {
    anomaly: Arc<AnomalyFunctor>,
    obj_mod: Vec<QBimodule>,
    mor_map: Vec<QMatrix>,
}

impl AnomalousRep {
    pub fn new(anomaly: Arc<AnomalyFunctor>, obj_mod: Vec<QBimodule>, mor_map: Vec<QMatrix>) -> Result<Self> {
        let c = anomaly.category().clone();
        if obj_mod.len() != c.num_objects() || mor_map.len() != c.num_morphisms() {
            return Err(Error::DimensionMismatch("one module per object and one map per morphism".into()));
        }
        for (x, m) in obj_mod.iter().enumerate() {
            if m.right_algebra().dim() != 1 || !m.left_algebra().same_table(anomaly.algebra(x)) {
                return Err(Error::AlgebraMismatch(format!("Z({}) must be a (J(X), K)-bimodule", c.objects()[x])));
            }
        }
        for (f, z) in mor_map.iter().enumerate() {
            let t = tensor_over(anomaly.bimodule(f), &obj_mod[c.source(f)])?;
            if z.shape() != (obj_mod[c.target(f)].dim(), t.product.dim()) {
                return Err(Error::DimensionMismatch(format!("Z({}) has the wrong shape", c.label(f))));
            }
        }
        Ok(AnomalousRep { anomaly, obj_mod, mor_map })
    }

    pub fn anomaly(&self) -> &Arc<AnomalyFunctor> {
        &self.anomaly
    }

    pub fn module(&self, x: usize) -> &QBimodule {
        &self.obj_mod[x]
    }

    pub fn modules(&self) -> &[QBimodule] {
        &self.obj_mod
    }

    pub fn map(&self, f: usize) -> &QMatrix {
        &self.mor_map[f]
    }

    pub fn maps(&self) -> &[QMatrix] {
        &self.mor_map
    }

    /// Both composites `J(g) (x) J(f) (x) Z(X_i) -> Z(X_k)` on the plain product.
    pub fn square_routes(&self, g: usize, f: usize) -> Result<(QMatrix, QMatrix)> {
        let j = &self.anomaly;
        let c = j.category();
        let gf = c.compose(g, f).ok_or(Error::NotComposable(g, f))?;
        let (i, jj) = (c.source(f), c.target(f));
        let zi = &self.obj_mod[i];
        let t_gf = tensor_over(j.bimodule(gf), zi)?;
        let t_f = tensor_over(j.bimodule(f), zi)?;
        let t_g = tensor_over(j.bimodule(g), &self.obj_mod[jj])?;
        let xi = j.intertwiner(g, f).mul(&j.composite(g, f).factor);
        let lhs = self.mor_map[gf].mul(&t_gf.factor).mul(&xi.kron(&Matrix::identity(zi.dim())));
        let inner = Matrix::identity(j.bimodule(g).dim()).kron(&self.mor_map[f].mul(&t_f.factor));
        let rhs = self.mor_map[g].mul(&t_g.factor).mul(&inner);
        Ok((lhs, rhs))
    }

    /// Module axioms, left-linearity, `Z(id)` equal to the action map, and
    /// `Z(g.f) (J(Xi) (x) id) = Z(g) (id (x) Z(f))`.
    pub fn validate(&self) -> Findings {
        let j = &self.anomaly;
        let c = j.category();
        let mut out = Vec::new();
        for (x, m) in self.obj_mod.iter().enumerate() {
            retag(&mut out, "anomalous_rep", &format!("Z({})", c.objects()[x]), m.validate());
        }
        if !out.is_empty() {
            return out;
        }
        for (f, z) in self.mor_map.iter().enumerate() {
            let loc = format!("Z({})", c.label(f));
            let zi = &self.obj_mod[c.source(f)];
            let t = match tensor_over(j.bimodule(f), zi) {
                Ok(t) => t,
                Err(e) => {
                    out.push(Violation::new("anomalous_rep.shape", loc, e.to_string()));
                    continue;
                }
            };
            for (a, (ls, lt)) in t.product.left_action().iter().zip(self.obj_mod[c.target(f)].left_action()).enumerate() {
                if z.mul(ls) != lt.mul(z) {
                    out.push(Violation::new("anomalous_rep.left_linear", format!("{loc}: e{a}"), "map does not commute with the left action"));
                }
            }
            if c.is_identity(f) && *z != left_action_map(zi).mul(&t.section) {
                out.push(Violation::new("anomalous_rep.unit", loc, "Z(id) is not the action map"));
            }
        }
        for (g, f) in c.composable_pairs() {
            match self.square_routes(g, f) {
                Ok((a, b)) if a == b => {}
                Ok(_) => out.push(Violation::new("anomalous_rep.square", c.pair_label(g, f), "Z(g.f) (Xi (x) id) != Z(g) (id (x) Z(f))")),
                Err(e) => out.push(Violation::new("anomalous_rep.square", c.pair_label(g, f), e.to_string())),
            }
        }
        out
    }
}

/// Matrices with `rho(g) rho(f) = alpha(g, f) rho(g . f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveRep {
    cat: Arc<FinCategory>,
    obj_dim: Vec<usize>,
    mor_mat: Vec<QMatrix>,
    scalars: Cocycle2,
}

impl ProjectiveRep {
    pub fn new(cat: Arc<FinCategory>, obj_dim: Vec<usize>, mor_mat: Vec<QMatrix>, scalars: Cocycle2) -> Result<Self> {
        if !same_category(&cat, scalars.category()) {
            return Err(Error::CategoryMismatch);
        }
        if obj_dim.len() != cat.num_objects() || mor_mat.len() != cat.num_morphisms() {
            return Err(Error::DimensionMismatch("one space per object and one matrix per morphism".into()));
        }
        for (f, m) in mor_mat.iter().enumerate() {
            if m.shape() != (obj_dim[cat.target(f)], obj_dim[cat.source(f)]) {
                return Err(Error::DimensionMismatch(format!("rho({}) has the wrong shape", cat.label(f))));
            }
        }
        Ok(ProjectiveRep { cat, obj_dim, mor_mat, scalars })
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn dim(&self, x: usize) -> usize {
        self.obj_dim[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.obj_dim
    }

    pub fn matrix(&self, f: usize) -> &QMatrix {
        &self.mor_mat[f]
    }

    pub fn matrices(&self) -> &[QMatrix] {
        &self.mor_mat
    }

    pub fn scalars(&self) -> &Cocycle2 {
        &self.scalars
    }

    pub fn validate(&self) -> Findings {
        let c = &self.cat;
        let mut out = Vec::new();
        retag(&mut out, "projective_rep", "scalars", self.scalars.validate());
        for (g, f) in c.composable_pairs() {
            let lhs = self.mor_mat[g].mul(&self.mor_mat[f]);
            let rhs = self.mor_mat[c.comp(g, f)].scale(self.scalars.value(g, f));
            if lhs != rhs {
                out.push(Violation::new("projective_rep.composition", c.pair_label(g, f), "rho(g) rho(f) != alpha(g, f) rho(g.f)"));
            }
        }
        out
    }

    /// Whether `family[x]` are invertible and intertwine `self` with `other`.
    pub fn isomorphic_via(&self, other: &Self, family: &[QMatrix]) -> bool {
        let c = &self.cat;
        same_category(c, &other.cat)
            && self.scalars == other.scalars
            && family.len() == c.num_objects()
            && family.iter().enumerate().all(|(x, p)| p.shape() == (other.obj_dim[x], self.obj_dim[x]) && inverse(p).is_some())
            && (0..c.num_morphisms()).all(|f| family[c.target(f)].mul(&self.mor_mat[f]) == other.mor_mat[f].mul(&family[c.source(f)]))
    }
}

/// Recovers `alpha` from the matrices.
pub fn cocycle_of(rho: &ProjectiveRep) -> Result<Cocycle2> {
    let c = rho.cat.clone();
    let mut values = std::collections::BTreeMap::new();
    for (g, f) in c.composable_pairs() {
        let lhs = rho.mor_mat[g].mul(&rho.mor_mat[f]);
        let target = &rho.mor_mat[c.comp(g, f)];
        let Some(k) = target.entries().iter().position(|x| !x.is_zero()) else {
            return Err(Error::InvalidData(format!("rho of {} . {} is zero", c.label(g), c.label(f))));
        };
        let s = &lhs.entries()[k] / &target.entries()[k];
        if s.is_zero() || lhs != target.scale(&s) {
            return Err(Error::InvalidData(format!("rho(g) rho(f) is not a nonzero multiple of rho(g.f) at {}", c.pair_label(g, f))));
        }
        values.insert((g, f), s);
    }
    Cocycle2::new(c, values)
}

pub fn tensor_projective(a: &ProjectiveRep, b: &ProjectiveRep) -> Result<ProjectiveRep> {
    if !same_category(&a.cat, &b.cat) {
        return Err(Error::CategoryMismatch);
    }
    let dims = a.obj_dim.iter().zip(&b.obj_dim).map(|(x, y)| x * y).collect();
    let mats = a.mor_mat.iter().zip(&b.mor_mat).map(|(x, y)| x.kron(y)).collect();
    ProjectiveRep::new(a.cat.clone(), dims, mats, a.scalars.multiply(&b.scalars)?)
}

/// One-dimensional `eta_beta(f) = beta(f)^-1` with scalars `coboundary(beta)^-1`.
pub fn eta_beta(beta: &Cochain1) -> Result<ProjectiveRep> {
    let c = beta.category().clone();
    let mats = beta.values().iter().map(|b| Matrix::from_vec(1, 1, vec![b.recip()])).collect();
    ProjectiveRep::new(c.clone(), vec![1; c.num_objects()], mats, coboundary(beta).invert()?)
}

/// `rho_hat(f) = beta(f)^-1 rho(f)`, a linear representation when
/// `coboundary(beta)` equals the scalars of `rho`.
pub fn linear_lift(rho: &ProjectiveRep, beta: &Cochain1) -> Result<ProjectiveRep> {
    if !same_category(&rho.cat, beta.category()) {
        return Err(Error::CategoryMismatch);
    }
    if coboundary(beta) != rho.scalars {
        return Err(Error::CocycleMismatch("coboundary(beta) differs from the scalars of rho".into()));
    }
    let mats = rho.mor_mat.iter().zip(beta.values()).map(|(m, b)| m.scale(&b.recip())).collect();
    ProjectiveRep::new(rho.cat.clone(), rho.obj_dim.clone(), mats, Cocycle2::trivial(rho.cat.clone()))
}

/// `rho(X) = xi(X) (x) Z(X)`, `rho(f) = (id (x) Z(f)) . assoc . (xi(f) (x) id)`.
pub fn proj_from_anomalous(z: &AnomalousRep, xi: &AlphaStructure) -> Result<ProjectiveRep> {
    if !same_anomaly(&z.anomaly, &xi.anomaly) {
        return Err(Error::EndpointMismatch("anomalous rep and alpha-structure use different anomalies".into()));
    }
    let j = &z.anomaly;
    let c = j.category().clone();
    let objs = (0..c.num_objects()).map(|x| tensor_over(&xi.obj_mod[x], &z.obj_mod[x])).collect::<Result<Vec<_>>>()?;
    let mut mats = Vec::with_capacity(c.num_morphisms());
    for f in 0..c.num_morphisms() {
        let (i, t) = (c.source(f), c.target(f));
        let (xj, zi, jf) = (&xi.obj_mod[t], &z.obj_mod[i], j.bimodule(f));
        let xj_jf = tensor_over(xj, jf)?;
        let before = tensor_over(&xj_jf.product, zi)?;
        let first = tensor_map(&objs[i], &before, &xi.mor_map[f], &Matrix::identity(zi.dim()));
        let assoc = associator(xj, jf, zi)?;
        let jf_zi = tensor_over(jf, zi)?;
        let after = tensor_over(xj, &jf_zi.product)?;
        let last = tensor_map(&after, &objs[t], &Matrix::identity(xj.dim()), &z.mor_map[f]);
        mats.push(last.mul(&assoc.matrix).mul(&first));
    }
    ProjectiveRep::new(c, objs.iter().map(|t| t.product.dim()).collect(), mats, xi.alpha.clone())
}

/// `epsilon_X: xi(X) (x) (xi(X)* (x) V_X) -> V_X`, collapsing `xi (x) xi*` through
/// the coevaluation.
pub fn comparison_maps(xi: &AlphaStructure, dims: &[usize]) -> Result<Vec<QMatrix>> {
    let mut out = Vec::with_capacity(dims.len());
    for (x, &n) in dims.iter().enumerate() {
        let m = &xi.obj_mod[x];
        let w = invertibility_check(m)?.ok_or_else(|| Error::NotInvertible(format!("xi at object {x}")))?;
        let z = tensor_over(&w.inverse, &Bimodule::vector_space(n))?;
        let t = tensor_over(m, &z.product)?;
        let tc = tensor_over(m, &w.inverse)?;
        let coev_inv = inverse(&w.coev.matrix).ok_or_else(|| Error::NotInvertible("coevaluation".into()))?;
        let collapse = coev_inv.mul(&tc.factor).kron(&Matrix::identity(n));
        let regroup = Matrix::identity(m.dim()).kron(&z.section);
        out.push(collapse.mul(&regroup).mul(&t.section));
    }
    Ok(out)
}

/// `Z(X) = xi(X)^-1 (x) rho(X)`, with each `Z(f)` the unique left-linear map
/// making `(id (x) Z(f)) . assoc . (xi(f) (x) id)` conjugate to `rho(f)` under
/// [`comparison_maps`].
pub fn anomalous_from_proj(rho: &ProjectiveRep, xi: &AlphaStructure) -> Result<AnomalousRep> {
    let j = xi.anomaly.clone();
    let c = j.category().clone();
    if !same_category(&c, &rho.cat) {
        return Err(Error::CategoryMismatch);
    }
    if rho.scalars != xi.alpha {
        return Err(Error::CocycleMismatch("rho and xi carry different cocycles".into()));
    }
    if !xi.is_invertible()? {
        return Err(Error::NotInvertible("alpha-structure".into()));
    }
    let mut obj_mod = Vec::with_capacity(c.num_objects());
    for (x, &n) in rho.obj_dim.iter().enumerate() {
        let (dual, _) = right_dual(&xi.obj_mod[x])?;
        obj_mod.push(tensor_over(&dual, &Bimodule::vector_space(n))?.product);
    }
    let eps = comparison_maps(xi, &rho.obj_dim)?;
    let eps_inv = eps.iter().map(|e| inverse(e).ok_or_else(|| Error::NotInvertible("comparison map".into()))).collect::<Result<Vec<_>>>()?;
    let sandwich = (0..c.num_objects()).map(|x| tensor_over(&xi.obj_mod[x], &obj_mod[x])).collect::<Result<Vec<_>>>()?;

    let mut mor_map = Vec::with_capacity(c.num_morphisms());
    for f in 0..c.num_morphisms() {
        let (i, t) = (c.source(f), c.target(f));
        let (xj, zi, zj, jf) = (&xi.obj_mod[t], &obj_mod[i], &obj_mod[t], j.bimodule(f));
        let a = tensor_over(xj, jf)?;
        let w = tensor_over(jf, zi)?;
        let p = Matrix::identity(xj.dim())
            .kron(&w.factor)
            .mul(&a.section.mul(&xi.mor_map[f]).kron(&Matrix::identity(zi.dim())))
            .mul(&sandwich[i].section);
        let target = eps_inv[t].mul(&rho.mor_mat[f]).mul(&eps[i]);
        let fj = &sandwich[t].factor;
        let (na, nz, nw) = (xj.dim(), zj.dim(), w.product.dim());
        let vars = nz * nw;
        let mut eqs: Vec<Vec<Rational>> = Vec::new();
        let mut rhs = Vec::new();
        for r in 0..fj.rows() {
            for col in 0..p.cols() {
                let mut row = vec![Rational::zero(); vars];
                for x in 0..na {
                    for k in 0..nz {
                        let fv = &fj[(r, x * nz + k)];
                        if fv.is_zero() {
                            continue;
                        }
                        for l in 0..nw {
                            let pv = &p[(x * nw + l, col)];
                            if !pv.is_zero() {
                                row[k * nw + l] += &(fv * pv);
                            }
                        }
                    }
                }
                eqs.push(row);
                rhs.push(target[(r, col)].clone());
            }
        }
        for (ls, lt) in w.product.left_action().iter().zip(zj.left_action()) {
            for r in 0..nz {
                for col in 0..nw {
                    let mut row = vec![Rational::zero(); vars];
                    for k in 0..nw {
                        if !ls[(k, col)].is_zero() {
                            row[r * nw + k] += &ls[(k, col)];
                        }
                    }
                    for k in 0..nz {
                        if !lt[(r, k)].is_zero() {
                            row[k * nw + col] -= &lt[(r, k)];
                        }
                    }
                    eqs.push(row);
                    rhs.push(Rational::zero());
                }
            }
        }
        let system = Matrix::try_from_rows(eqs, vars).expect("rows have the variable count");
        let sol = solve_linear(&system, &rhs)?
            .ok_or_else(|| Error::InvalidData(format!("no left-linear Z({}) reproduces rho", c.label(f))))?;
        mor_map.push(Matrix::from_vec(nz, nw, sol));
    }
    AnomalousRep::new(j, obj_mod, mor_map)
}

/// The regular projective representation `x_g -> alpha(g, h) x_{gh}` of a
/// cocycle on a delooped group.
pub fn regular_projective_rep(alpha: &Cocycle2) -> Result<ProjectiveRep> {
    let c = alpha.category().clone();
    if c.num_objects() != 1 {
        return Err(Error::InvalidData("regular representation needs a one-object category".into()));
    }
    let n = c.num_morphisms();
    let mats = (0..n)
        .map(|g| {
            let mut m = Matrix::zeros(n, n);
            for h in 0..n {
                m[(c.comp(g, h), h)] = alpha.value(g, h).clone();
            }
            m
        })
        .collect();
    ProjectiveRep::new(c, vec![n], mats, alpha.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::anomaly::{canonical_anomaly, constant_anomaly};
    use crate::group::GroupTable;
    use crate::scalar::{frac, q};
    use crate::tensor::{row_module, unitor_right};

    fn z2() -> Arc<FinCategory> {
        Arc::new(FinCategory::delooping(&GroupTable::cyclic(2)))
    }

    fn sign(c: Arc<FinCategory>) -> Cocycle2 {
        Cocycle2::from_fn(c, |g, f| if g == 1 && f == 1 { q(-1) } else { q(1) })
    }

    #[test]
    fn canonical_structure_passes_matrices_through() {
        let c = z2();
        let alpha = sign(c.clone());
        let rho = regular_projective_rep(&alpha).unwrap();
        assert!(rho.validate().is_empty());
        let j = Arc::new(canonical_anomaly(c, &alpha).unwrap());
        let xi = canonical_alpha_structure(j, &alpha).unwrap();
        assert!(xi.validate().is_empty());
        assert!(xi.is_invertible().unwrap());
        let z = anomalous_from_proj(&rho, &xi).unwrap();
        assert!(z.validate().is_empty());
        assert_eq!(z.maps(), rho.matrices());
        assert_eq!(proj_from_anomalous(&z, &xi).unwrap(), rho);
    }

    #[test]
    fn morita_equivalent_structure() {
        let c = z2();
        let m2 = Arc::new(Algebra::matrix_algebra(2));
        let j = Arc::new(constant_anomaly(c.clone(), m2.clone()).unwrap());
        let row = row_module(&m2, 2).unwrap();
        let back = unitor_right(&row).unwrap().inverse().unwrap().matrix;
        let xi = AlphaStructure::new(j, Cocycle2::trivial(c.clone()), vec![row], vec![back.clone(), back]).unwrap();
        assert!(xi.validate().is_empty());
        assert!(xi.is_invertible().unwrap());

        let swap = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        let rho = ProjectiveRep::new(c.clone(), vec![2], vec![Matrix::identity(2), swap], Cocycle2::trivial(c)).unwrap();
        let z = anomalous_from_proj(&rho, &xi).unwrap();
        assert_eq!(z.module(0).dim(), 4);
        assert!(z.validate().is_empty());
        let again = proj_from_anomalous(&z, &xi).unwrap();
        let eps = comparison_maps(&xi, rho.dims()).unwrap();
        assert!(again.isomorphic_via(&rho, &eps));
    }

    #[test]
    fn broken_alpha_structure_is_reported() {
        let c = z2();
        let alpha = sign(c.clone());
        let j = Arc::new(canonical_anomaly(c.clone(), &alpha).unwrap());
        let k = Arc::new(Algebra::ground());
        let bad = AlphaStructure::new(j, alpha, vec![Bimodule::right_regular(&k)], vec![Matrix::identity(1), Matrix::identity(1).scale(&q(2))]).unwrap();
        assert!(bad.validate().iter().any(|v| v.check == "alpha_structure.square"));
    }

    #[test]
    fn scalar_operations() {
        let c = z2();
        let beta = Cochain1::new(c.clone(), vec![q(1), frac(-2, 3)]).unwrap();
        let eta = eta_beta(&beta).unwrap();
        assert!(eta.validate().is_empty());
        let rho = regular_projective_rep(&sign(c.clone())).unwrap();
        let both = tensor_projective(&eta, &rho).unwrap();
        assert!(both.validate().is_empty());
        assert_eq!(cocycle_of(&both).unwrap(), eta.scalars().multiply(rho.scalars()).unwrap());

        let twisted = tensor_projective(&eta_beta(&beta.inverse()).unwrap(), &regular_projective_rep(&Cocycle2::trivial(c.clone())).unwrap()).unwrap();
        let lifted = linear_lift(&twisted, &beta).unwrap();
        assert!(lifted.validate().is_empty());
        assert_eq!(lifted.matrix(1), &Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]));
        assert!(matches!(linear_lift(&rho, &beta), Err(Error::CocycleMismatch(_))));
    }
}
