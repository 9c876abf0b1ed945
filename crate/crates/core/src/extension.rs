//! The extension category `C^J`, its pointed presentation `C^J_ST`, and the
//! functors relating their representations to anomalous representations.

use std::sync::Arc;

use crate::anomaly::AnomalyFunctor;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::inverse;
use crate::matrix::Matrix;
use crate::report::{Findings, Violation};
use crate::reps::{check_twisted_map, lax_composite, proj_from_anomalous, AlphaStructure, AnomalousRep, ProjectiveRep};
use crate::scalar::Rational;
use crate::tensor::{left_action_map, right_action_map, tensor_over, TensorResult};
use crate::{QBimodule, QMatrix};

/// Object `(X, L)` of `C^J`: `L` is a right `J(X)`-module, stored as a
/// `(K, J(X))`-bimodule.
#[derive(Clone, Debug, PartialEq)]
pub struct CJObject {
    pub object: usize,
    pub module: QBimodule,
}

/// Morphism `(f, phi)` with `phi: L_i -> L_j (x) J(f)` right `J(X_i)`-linear.
#[derive(Clone, Debug, PartialEq)]
pub struct CJMorphism {
    pub morphism: usize,
    pub source: CJObject,
    pub target: CJObject,
    pub map: QMatrix,
}

impl CJObject {
    pub fn new(j: &AnomalyFunctor, object: usize, module: QBimodule) -> Result<Self> {
        if object >= j.category().num_objects() {
            return Err(Error::InvalidData(format!("object {object} out of range")));
        }
        if module.left_algebra().dim() != 1 || !module.right_algebra().same_table(j.algebra(object)) {
            return Err(Error::AlgebraMismatch("module must be a right module over J(X)".into()));
        }
        Ok(CJObject { object, module })
    }

    /// `(X, J(X))`.
    pub fn regular(j: &AnomalyFunctor, object: usize) -> Self {
        CJObject { object, module: Bimodule::right_regular(j.algebra(object)) }
    }
}

impl CJMorphism {
    pub fn new(j: &AnomalyFunctor, morphism: usize, source: CJObject, target: CJObject, map: QMatrix) -> Result<Self> {
        let c = j.category();
        if c.source(morphism) != source.object || c.target(morphism) != target.object {
            return Err(Error::EndpointMismatch(format!("objects do not match {}", c.label(morphism))));
        }
        check_twisted_map(j, morphism, &source.module, &target.module, &map)?;
        Ok(CJMorphism { morphism, source, target, map })
    }

    /// Right-linearity of the map.
    pub fn validate(&self, j: &AnomalyFunctor) -> Findings {
        match check_twisted_map(j, self.morphism, &self.source.module, &self.target.module, &self.map) {
            Ok(found) => found.into_iter().map(|v| Violation::new(format!("cj.{}", v.check), v.location, v.detail)).collect(),
            Err(e) => vec![Violation::new("cj.shape", j.category().label(self.morphism), e.to_string())],
        }
    }
}

/// The unique right-linear `J(X_i) -> L (x) J(f)` sending `1` to `w`.
pub fn pointed_cj_morphism(j: &AnomalyFunctor, f: usize, target: CJObject, w: &[Rational]) -> Result<CJMorphism> {
    let c = j.category();
    let source = CJObject::regular(j, c.source(f));
    let t = tensor_over(&target.module, j.bimodule(f))?;
    if w.len() != t.product.dim() {
        return Err(Error::DimensionMismatch("pointing has the wrong length".into()));
    }
    let cols: Vec<Vec<Rational>> = t.product.right_action().iter().map(|r| r.apply(w)).collect();
    CJMorphism::new(j, f, source, target, Matrix::from_columns(t.product.dim(), &cols))
}

fn endpoints_agree(first: &CJMorphism, second: &CJMorphism, composite: &CJMorphism, j: &AnomalyFunctor) -> Result<()> {
    let c = j.category();
    if first.target != second.source {
        return Err(Error::EndpointMismatch("first target differs from second source".into()));
    }
    if composite.source != first.source || composite.target != second.target {
        return Err(Error::EndpointMismatch("composite has different endpoints".into()));
    }
    if c.compose(second.morphism, first.morphism) != Some(composite.morphism) {
        return Err(Error::EndpointMismatch("composite lies over a different morphism".into()));
    }
    Ok(())
}

/// `phi_ik = (id (x) J(Xi)) (phi_jk (x) id) phi_ij`.
pub fn check_cj_2simplex(j: &AnomalyFunctor, first: &CJMorphism, second: &CJMorphism, composite: &CJMorphism) -> Result<Findings> {
    check_cjbk_2simplex(j, first, second, composite, &Rational::from_integer(1.into()))
}

/// The same with `phi_ik` scaled by `scalar`.
pub fn check_cjbk_2simplex(
    j: &AnomalyFunctor,
    first: &CJMorphism,
    second: &CJMorphism,
    composite: &CJMorphism,
    scalar: &Rational,
) -> Result<Findings> {
    endpoints_agree(first, second, composite, j)?;
    let rhs = lax_composite(j, second.morphism, first.morphism, &first.target.module, &second.target.module, &first.map, &second.map)?;
    if composite.map.scale(scalar) == rhs {
        Ok(Vec::new())
    } else {
        let loc = j.category().pair_label(second.morphism, first.morphism);
        Ok(vec![Violation::new("cj.2simplex", loc, "composite map differs from the lax composition")])
    }
}

/// Image of an alpha-structure in `C^J //BK*`: objects, morphisms and the
/// scalar carried by each composable pair.
#[derive(Clone, Debug, PartialEq)]
pub struct XiHat {
    pub objects: Vec<CJObject>,
    pub morphisms: Vec<CJMorphism>,
}

pub fn xi_hat(xi: &AlphaStructure) -> Result<XiHat> {
    let j = xi.anomaly();
    let c = j.category();
    let objects = (0..c.num_objects()).map(|x| CJObject::new(j, x, xi.module(x).clone())).collect::<Result<Vec<_>>>()?;
    let morphisms = (0..c.num_morphisms())
        .map(|f| CJMorphism::new(j, f, objects[c.source(f)].clone(), objects[c.target(f)].clone(), xi.map(f).clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(XiHat { objects, morphisms })
}

impl XiHat {
    /// Every composable pair is a 2-simplex of `C^J //BK*` with scalar `alpha`.
    pub fn validate(&self, xi: &AlphaStructure) -> Result<Findings> {
        let j = xi.anomaly();
        let c = j.category();
        let mut out = Vec::new();
        for (g, f) in c.composable_pairs() {
            let comp = &self.morphisms[c.comp(g, f)];
            out.extend(check_cjbk_2simplex(j, &self.morphisms[f], &self.morphisms[g], comp, xi.alpha().value(g, f))?);
        }
        Ok(out)
    }
}

/// Morphism `(f, v)` of `C^J_ST` with `v` in `J(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STMorphism {
    pub morphism: usize,
    pub pointing: Vec<Rational>,
}

/// `(g, w) . (f, v) = (g . f, J(Xi)(w (x) v))`.
pub fn compose_st(j: &AnomalyFunctor, second: &STMorphism, first: &STMorphism) -> Result<STMorphism> {
    let (g, f) = (second.morphism, first.morphism);
    let gf = j.category().compose(g, f).ok_or(Error::NotComposable(g, f))?;
    let v = Matrix::column_vector(&second.pointing).kron(&Matrix::column_vector(&first.pointing));
    let t = j.composite(g, f);
    Ok(STMorphism { morphism: gf, pointing: j.intertwiner(g, f).mul(&t.factor).mul(&v).into_entries() })
}

/// `(id_X, 1)`.
pub fn st_identity(j: &AnomalyFunctor, x: usize) -> STMorphism {
    STMorphism { morphism: j.category().identity(x), pointing: j.algebra(x).unit().to_vec() }
}

fn left_collapse(j: &AnomalyFunctor, f: usize) -> Result<(TensorResult<Rational>, QMatrix)> {
    let target = Bimodule::right_regular(j.algebra(j.category().target(f)));
    let t = tensor_over(&target, j.bimodule(f))?;
    let lam = left_action_map(j.bimodule(f)).mul(&t.section);
    Ok((t, lam))
}

/// The `C^J` morphism between regular objects with `phi(1) = v`.
pub fn st_to_cj(j: &AnomalyFunctor, m: &STMorphism) -> Result<CJMorphism> {
    let (_, lam) = left_collapse(j, m.morphism)?;
    let lam_inv = inverse(&lam).ok_or_else(|| Error::NotInvertible("left action map".into()))?;
    let target = CJObject::regular(j, j.category().target(m.morphism));
    pointed_cj_morphism(j, m.morphism, target, &lam_inv.apply(&m.pointing))
}

/// `phi -> phi(1)`, for morphisms between regular objects.
pub fn cj_to_st(j: &AnomalyFunctor, m: &CJMorphism) -> Result<STMorphism> {
    let c = j.category();
    let f = m.morphism;
    if m.source != CJObject::regular(j, c.source(f)) || m.target != CJObject::regular(j, c.target(f)) {
        return Err(Error::NonRegularModule("endpoints are not regular objects".into()));
    }
    let (_, lam) = left_collapse(j, f)?;
    let one = m.map.apply(j.algebra(c.source(f)).unit());
    Ok(STMorphism { morphism: f, pointing: lam.apply(&one) })
}

/// Representation of `C^J_ST`: a space per object and, for each morphism,
/// the matrices `F(f, e_a)` for the basis of `J(f)`, extended linearly.
#[derive(Clone, Debug, PartialEq)]
pub struct STRep {
    anomaly: Arc<AnomalyFunctor>,
    obj_space: Vec<usize>,
    action: Vec<Vec<QMatrix>>,
}

impl STRep {
    pub fn new(anomaly: Arc<AnomalyFunctor>, obj_space: Vec<usize>, action: Vec<Vec<QMatrix>>) -> Result<Self> {
        let c = anomaly.category().clone();
        if obj_space.len() != c.num_objects() || action.len() != c.num_morphisms() {
            return Err(Error::DimensionMismatch("one space per object and one family per morphism".into()));
        }
        for (f, mats) in action.iter().enumerate() {
            let shape = (obj_space[c.target(f)], obj_space[c.source(f)]);
            if mats.len() != anomaly.bimodule(f).dim() || mats.iter().any(|m| m.shape() != shape) {
                return Err(Error::DimensionMismatch(format!("F({}, -) has the wrong shape", c.label(f))));
            }
        }
        Ok(STRep { anomaly, obj_space, action })
    }

    pub fn anomaly(&self) -> &Arc<AnomalyFunctor> {
        &self.anomaly
    }

    pub fn dims(&self) -> &[usize] {
        &self.obj_space
    }

    pub fn action(&self, f: usize) -> &[QMatrix] {
        &self.action[f]
    }

    pub fn actions(&self) -> &[Vec<QMatrix>] {
        &self.action
    }

    /// `F(f, v)`.
    pub fn value(&self, m: &STMorphism) -> QMatrix {
        let c = self.anomaly.category();
        let f = m.morphism;
        Matrix::combination(self.obj_space[c.target(f)], self.obj_space[c.source(f)], &m.pointing, &self.action[f])
    }

    /// `lambda_X(j) = F(id_X, j)` on basis elements.
    pub fn lambda_map(&self, x: usize) -> &[QMatrix] {
        &self.action[self.anomaly.category().identity(x)]
    }

    /// Functoriality on basis pointings and on identities.
    pub fn validate(&self) -> Findings {
        let j = &self.anomaly;
        let c = j.category();
        let mut out = Vec::new();
        for x in 0..c.num_objects() {
            if !self.value(&st_identity(j, x)).is_identity() {
                out.push(Violation::new("st_rep.unit", c.objects()[x].clone(), "F(id, 1) is not the identity"));
            }
        }
        for (g, f) in c.composable_pairs() {
            let gf = c.comp(g, f);
            let pointings = j.intertwiner(g, f).mul(&j.composite(g, f).factor);
            let nf = j.bimodule(f).dim();
            'pairs: for (a, fa) in self.action[g].iter().enumerate() {
                for (b, fb) in self.action[f].iter().enumerate() {
                    let m = STMorphism { morphism: gf, pointing: pointings.column(a * nf + b) };
                    if fa.mul(fb) != self.value(&m) {
                        out.push(Violation::new("st_rep.composition", c.pair_label(g, f), format!("F(g, e{a}) F(f, e{b}) != F(composite)")));
                        break 'pairs;
                    }
                }
            }
        }
        out
    }

    /// Each `lambda_X` is a unital algebra map `J(X) -> End(F(X))`.
    pub fn check_scalars(&self) -> Findings {
        let j = &self.anomaly;
        let c = j.category();
        let mut out = Vec::new();
        for x in 0..c.num_objects() {
            let a = j.algebra(x);
            let lam = self.lambda_map(x);
            let n = self.obj_space[x];
            let name = &c.objects()[x];
            if !Matrix::combination(n, n, a.unit(), lam).is_identity() {
                out.push(Violation::new("st_rep.scalar_unit", name.clone(), "lambda(1) is not the identity"));
            }
            for p in 0..a.dim() {
                for q in 0..a.dim() {
                    if lam[p].mul(&lam[q]) != Matrix::combination(n, n, &a.mul_basis(p, q), lam) {
                        out.push(Violation::new("st_rep.scalar_mult", format!("{name}: (e{p}, e{q})"), "lambda is not multiplicative"));
                    }
                }
            }
        }
        out
    }
}

/// `Z_F(X) = F(X)` with `J(X)` acting through `lambda_X`, and
/// `Z_F(f)(j (x) v) = F(f, j)(v)`.
pub fn z_from_f(f: &STRep) -> Result<AnomalousRep> {
    if let Some(v) = f.check_scalars().first() {
        return Err(Error::ScalarAction(v.to_string()));
    }
    let j = &f.anomaly;
    let c = j.category();
    let mods = (0..c.num_objects())
        .map(|x| Bimodule::left_module(j.algebra(x), f.obj_space[x], f.lambda_map(x).to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(c.num_morphisms());
    for m in 0..c.num_morphisms() {
        let plain = f.action[m].iter().fold(Matrix::zeros(f.obj_space[c.target(m)], 0), |acc, x| acc.hstack(x));
        let t = tensor_over(j.bimodule(m), &mods[c.source(m)])?;
        let z = plain.mul(&t.section);
        if z.mul(&t.factor) != plain {
            return Err(Error::Balancing(format!("F({}, -) is not balanced over the scalar action", c.label(m))));
        }
        maps.push(z);
    }
    AnomalousRep::new(j.clone(), mods, maps)
}

/// `F(X) = Z(X)`, `F(f, v) = Z(f)(v (x) -)`.
pub fn restrict_to_st(z: &AnomalousRep) -> Result<STRep> {
    let j = z.anomaly();
    let c = j.category();
    let dims: Vec<usize> = z.modules().iter().map(Bimodule::dim).collect();
    let mut action = Vec::with_capacity(c.num_morphisms());
    for f in 0..c.num_morphisms() {
        let zi = z.module(c.source(f));
        let t = tensor_over(j.bimodule(f), zi)?;
        let base = z.map(f).mul(&t.factor);
        let n = j.bimodule(f).dim();
        let mats = (0..n).map(|a| base.submatrix(0..base.rows(), a * zi.dim()..(a + 1) * zi.dim())).collect();
        action.push(mats);
    }
    STRep::new(j.clone(), dims, action)
}

/// `E_Z(X, L) = L (x)_{J(X)} Z(X)`.
pub fn ez_object(z: &AnomalousRep, o: &CJObject) -> Result<TensorResult<Rational>> {
    tensor_over(&o.module, z.module(o.object))
}

/// `E_Z(f, phi) = (id (x) Z(f)) . (phi (x) id)`, computed on plain lifts.
pub fn ez_morphism(z: &AnomalousRep, m: &CJMorphism) -> Result<QMatrix> {
    let j = z.anomaly();
    let f = m.morphism;
    let (li, lj) = (&m.source.module, &m.target.module);
    let (zi, zj) = (z.module(m.source.object), z.module(m.target.object));
    let ti = tensor_over(li, zi)?;
    let tj = tensor_over(lj, zj)?;
    let a = tensor_over(lj, j.bimodule(f))?;
    let w = tensor_over(j.bimodule(f), zi)?;
    let lift = a.section.mul(&m.map).kron(&Matrix::identity(zi.dim())).mul(&ti.section);
    let push = Matrix::identity(lj.dim()).kron(&z.map(f).mul(&w.factor));
    Ok(tj.factor.mul(&push).mul(&lift))
}

/// `E_{Z_F} . xi_hat`, i.e. the projective representation obtained from `F`
/// and `xi` through the pointed presentation.
pub fn proj_via_st(f: &STRep, xi: &AlphaStructure) -> Result<ProjectiveRep> {
    if let Some(v) = f.check_scalars().first() {
        return Err(Error::ScalarAction(v.to_string()));
    }
    let z = z_from_f(f)?;
    let hat = xi_hat(xi)?;
    let c = f.anomaly.category().clone();
    let dims = hat.objects.iter().map(|o| ez_object(&z, o).map(|t| t.product.dim())).collect::<Result<Vec<_>>>()?;
    let mats = hat.morphisms.iter().map(|m| ez_morphism(&z, m)).collect::<Result<Vec<_>>>()?;
    ProjectiveRep::new(c, dims, mats, xi.alpha().clone())
}

/// `L (x)_{J(X)} E(X, J(X)) -> E(X, L)`, `l (x) v -> E(id_X, phi_l)(v)`.
pub fn triangle_comparison(z: &AnomalousRep, x: usize, module: &QBimodule) -> Result<QMatrix> {
    let j = z.anomaly();
    let c = j.category();
    let id = c.identity(x);
    let target = CJObject::new(j, x, module.clone())?;
    let reg = CJObject::regular(j, x);
    let e_reg = ez_object(z, &reg)?;
    let lam = (0..j.algebra(x).dim())
        .map(|a| ez_morphism(z, &st_to_cj(j, &STMorphism { morphism: id, pointing: j.algebra(x).basis(a) })?))
        .collect::<Result<Vec<_>>>()?;
    let e_mod = Bimodule::left_module(j.algebra(x), e_reg.product.dim(), lam)?;
    let s = tensor_over(module, &e_mod)?;
    let t = tensor_over(module, j.bimodule(id))?;
    let rho = right_action_map(module).mul(&t.section);
    let rho_inv = inverse(&rho).ok_or_else(|| Error::NotInvertible("right action map".into()))?;
    let mut plain = Matrix::zeros(ez_object(z, &target)?.product.dim(), 0);
    for l in 0..module.dim() {
        let phi = pointed_cj_morphism(j, id, target.clone(), &rho_inv.apply(&module_basis(module.dim(), l)))?;
        plain = plain.hstack(&ez_morphism(z, &phi)?);
    }
    let map = plain.mul(&s.section);
    if map.mul(&s.factor) != plain {
        return Err(Error::Balancing("comparison map is not balanced".into()));
    }
    Ok(map)
}

fn module_basis(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::from_integer(0.into()); n];
    v[i] = Rational::from_integer(1.into());
    v
}

/// Regular, zero and doubled regular right modules at every object.
pub fn default_test_modules(j: &AnomalyFunctor) -> Vec<(usize, QBimodule)> {
    let k = Arc::new(crate::algebra::Algebra::ground());
    let mut out = Vec::new();
    for x in 0..j.category().num_objects() {
        let reg = Bimodule::right_regular(j.algebra(x));
        out.push((x, reg.clone()));
        out.push((x, Bimodule::zero(&k, j.algebra(x))));
        out.push((x, reg.direct_sum(&reg).expect("same algebras")));
    }
    out
}

/// Checks both triangles relating `C^J_ST` representations, anomalous
/// representations and `C^J` representations on the given test modules.
pub fn verify_triangle(f: &STRep, xi: Option<&AlphaStructure>, test_modules: &[(usize, QBimodule)]) -> Findings {
    let mut out = f.validate();
    out.extend(f.check_scalars());
    if !out.is_empty() {
        return out;
    }
    let fail = |check: &str, loc: &str, detail: String| Violation::new(format!("triangle.{check}"), loc, detail);
    let z = match z_from_f(f) {
        Ok(z) => z,
        Err(e) => return vec![fail("z_from_f", "F", e.to_string())],
    };
    out.extend(z.validate());
    match restrict_to_st(&z) {
        Ok(back) if &back == f => {}
        Ok(_) => out.push(fail("restrict_roundtrip", "F", "restrict_to_st(z_from_f(F)) != F".into())),
        Err(e) => out.push(fail("restrict_roundtrip", "F", e.to_string())),
    }
    match restrict_to_st(&z).and_then(|r| z_from_f(&r)) {
        Ok(again) if again == z => {}
        Ok(_) => out.push(fail("z_roundtrip", "Z", "z_from_f(restrict_to_st(Z)) != Z".into())),
        Err(e) => out.push(fail("z_roundtrip", "Z", e.to_string())),
    }
    let c = f.anomaly.category();
    for (k, (x, module)) in test_modules.iter().enumerate() {
        let loc = format!("{} module #{k}", c.objects()[*x]);
        match triangle_comparison(&z, *x, module) {
            Ok(m) if inverse(&m).is_some() => {}
            Ok(_) => out.push(fail("comparison", &loc, "comparison map is not invertible".into())),
            Err(e) => out.push(fail("comparison", &loc, e.to_string())),
        }
    }
    if let Some(xi) = xi {
        let via = proj_via_st(f, xi);
        let direct = proj_from_anomalous(&z, xi);
        match (via, direct) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => out.push(fail("projective", "xi", "proj_via_st differs from proj_from_anomalous".into())),
            (Err(e), _) | (_, Err(e)) => out.push(fail("projective", "xi", e.to_string())),
        }
    }
    out
}
