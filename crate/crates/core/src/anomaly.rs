//! Anomalies: normalized 2-functors from a finite category into algebras,
//! bimodules and intertwiners.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::category::FinCategory;
use crate::cocycle::Cocycle2;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nerve::{check_2simplex, tetrahedron_routes, ThreeSimplex, TwoSimplex};
use crate::report::{Findings, Violation};
use crate::scalar::Rational;
use crate::tensor::{left_action_map, right_action_map, tensor_over, TensorResult};
use crate::{QAlgebra, QBimodule, QMatrix};

/// `J`: objects to algebras, a morphism `f: X -> Y` to a `(J(Y), J(X))`-bimodule,
/// and for each composable `(g, f)` an intertwiner `J(g) (x) J(f) -> J(g . f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnomalyFunctor {
    cat: Arc<FinCategory>,
    obj_alg: Vec<Arc<QAlgebra>>,
    mor_bimod: Vec<QBimodule>,
    intertwiners: BTreeMap<(usize, usize), QMatrix>,
    composites: BTreeMap<(usize, usize), TensorResult<Rational>>,
}

impl AnomalyFunctor {
    /// Checks shapes and corner algebras; the coherence conditions are left
    /// to [`AnomalyFunctor::validate`].
    pub fn new(
        cat: Arc<FinCategory>,
        obj_alg: Vec<Arc<QAlgebra>>,
        mor_bimod: Vec<QBimodule>,
        intertwiners: BTreeMap<(usize, usize), QMatrix>,
    ) -> Result<Self> {
        if obj_alg.len() != cat.num_objects() || mor_bimod.len() != cat.num_morphisms() {
            return Err(Error::DimensionMismatch("one algebra per object and one bimodule per morphism".into()));
        }
        for (f, m) in mor_bimod.iter().enumerate() {
            let ok = m.left_algebra().same_table(&obj_alg[cat.target(f)]) && m.right_algebra().same_table(&obj_alg[cat.source(f)]);
            if !ok {
                return Err(Error::AlgebraMismatch(format!("J({}) is not over the algebras of its endpoints", cat.label(f))));
            }
        }
        let pairs = cat.composable_pairs();
        if let Some(&(g, f)) = pairs.iter().find(|p| !intertwiners.contains_key(p)) {
            return Err(Error::InvalidData(format!("no intertwiner for {}", cat.pair_label(g, f))));
        }
        if intertwiners.len() != pairs.len() {
            return Err(Error::InvalidData("intertwiner given for a non-composable pair".into()));
        }
        let mut composites = BTreeMap::new();
        for &(g, f) in &pairs {
            composites.insert((g, f), tensor_over(&mor_bimod[g], &mor_bimod[f])?);
        }
        Ok(AnomalyFunctor { cat, obj_alg, mor_bimod, intertwiners, composites })
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn algebra(&self, x: usize) -> &Arc<QAlgebra> {
        &self.obj_alg[x]
    }

    pub fn algebras(&self) -> &[Arc<QAlgebra>] {
        &self.obj_alg
    }

    pub fn bimodule(&self, f: usize) -> &QBimodule {
        &self.mor_bimod[f]
    }

    pub fn bimodules(&self) -> &[QBimodule] {
        &self.mor_bimod
    }

    /// `J(Xi)` for the composable pair `(g, f)`.
    pub fn intertwiner(&self, g: usize, f: usize) -> &QMatrix {
        &self.intertwiners[&(g, f)]
    }

    pub fn intertwiners(&self) -> &BTreeMap<(usize, usize), QMatrix> {
        &self.intertwiners
    }

    /// `J(g) (x) J(f)` for a composable pair.
    pub fn composite(&self, g: usize, f: usize) -> &TensorResult<Rational> {
        &self.composites[&(g, f)]
    }

    /// Algebra, bimodule and 2-simplex checks, strict unitality and the
    /// tetrahedron identity on every composable triple.
    pub fn validate(&self) -> Findings {
        let c = &self.cat;
        let mut out = Vec::new();
        let tag = |out: &mut Findings, loc: String, found: Findings| {
            out.extend(found.into_iter().map(|v| Violation::new(format!("anomaly.{}", v.check), format!("{loc}: {}", v.location), v.detail)));
        };
        for (x, a) in self.obj_alg.iter().enumerate() {
            tag(&mut out, format!("J({})", c.objects()[x]), a.validate());
        }
        for (f, m) in self.mor_bimod.iter().enumerate() {
            tag(&mut out, format!("J({})", c.label(f)), m.validate());
        }
        for x in 0..c.num_objects() {
            let id = c.identity(x);
            if self.mor_bimod[id] != Bimodule::regular(&self.obj_alg[x]) {
                out.push(Violation::new("anomaly.unit", format!("J({})", c.label(id)), "identity does not map to the regular bimodule"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (&(g, f), xi) in &self.intertwiners {
            let loc = c.pair_label(g, f);
            let gf = c.comp(g, f);
            let s = TwoSimplex { m_ij: &self.mor_bimod[f], m_jk: &self.mor_bimod[g], m_ik: &self.mor_bimod[gf], filler: xi };
            tag(&mut out, format!("Xi{loc}"), check_2simplex(&s));
            let section = &self.composites[&(g, f)].section;
            let left_bad = c.is_identity(g) && *xi != left_action_map(&self.mor_bimod[f]).mul(section);
            let right_bad = c.is_identity(f) && *xi != right_action_map(&self.mor_bimod[g]).mul(section);
            if left_bad || right_bad {
                out.push(Violation::new("anomaly.unit", format!("Xi{loc}"), "intertwiner with an identity is not the action map"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (h, g, f) in c.composable_triples() {
            let (gf, hg) = (c.comp(g, f), c.comp(h, g));
            let hgf = c.comp(h, gf);
            let j = |m: usize| &self.mor_bimod[m];
            let face = |a: usize, b: usize, ab: usize, x: &'_ (usize, usize)| TwoSimplex {
                m_ij: j(a),
                m_jk: j(b),
                m_ik: j(ab),
                filler: &self.intertwiners[x],
            };
            let s = ThreeSimplex {
                faces: [face(g, h, hg, &(h, g)), face(gf, h, hgf, &(h, gf)), face(f, hg, hgf, &(hg, f)), face(f, g, gf, &(g, f))],
            };
            let loc = format!("({}, {}, {})", c.label(h), c.label(g), c.label(f));
            match tetrahedron_routes(&s) {
                Ok((a, b)) if a == b => {}
                Ok(_) => out.push(Violation::new("anomaly.associativity", loc, "intertwiners are not associative")),
                Err(e) => out.push(Violation::new("anomaly.associativity", loc, e.to_string())),
            }
        }
        out
    }
}

/// `J_alpha`: every algebra and bimodule is `K`, `J(Xi)` is `alpha`.
///
/// Strict unitality forces `alpha` to be normalized.
pub fn canonical_anomaly(cat: Arc<FinCategory>, alpha: &Cocycle2) -> Result<AnomalyFunctor> {
    if !crate::cocycle::same_category(&cat, alpha.category()) {
        return Err(Error::CategoryMismatch);
    }
    if let Some(v) = alpha.validate().first() {
        return Err(Error::InvalidCocycle(v.to_string()));
    }
    if !alpha.is_normalized() {
        return Err(Error::InvalidCocycle("cocycle is not normalized".into()));
    }
    let k = Arc::new(Algebra::ground());
    let obj = vec![k.clone(); cat.num_objects()];
    let mor = vec![Bimodule::regular(&k); cat.num_morphisms()];
    let xi = alpha.values().iter().map(|(&p, v)| (p, Matrix::from_vec(1, 1, vec![v.clone()]))).collect();
    AnomalyFunctor::new(cat, obj, mor, xi)
}

/// Every object goes to `a`, every morphism to the regular bimodule, every
/// intertwiner to multiplication.
pub fn constant_anomaly(cat: Arc<FinCategory>, a: Arc<QAlgebra>) -> Result<AnomalyFunctor> {
    let reg = Bimodule::regular(&a);
    let t = tensor_over(&reg, &reg)?;
    let mu = left_action_map(&reg).mul(&t.section);
    let xi = cat.composable_pairs().into_iter().map(|p| (p, mu.clone())).collect();
    AnomalyFunctor::new(cat.clone(), vec![a; cat.num_objects()], vec![reg; cat.num_morphisms()], xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::scalar::q;

    #[test]
    fn canonical_anomaly_of_sign_cocycle() {
        let cat = Arc::new(FinCategory::delooping(&GroupTable::cyclic(2)));
        let a = Cocycle2::from_fn(cat.clone(), |g, f| if g == 1 && f == 1 { q(-1) } else { q(1) });
        let j = canonical_anomaly(cat.clone(), &a).unwrap();
        assert!(j.validate().is_empty());
        assert_eq!(j.intertwiner(1, 1)[(0, 0)], q(-1));
    }

    #[test]
    fn non_cocycle_gives_associativity_failure() {
        let cat = Arc::new(FinCategory::delooping(&GroupTable::cyclic(3)));
        let a = Cocycle2::from_fn(cat.clone(), |g, f| if (g, f) == (1, 2) { q(2) } else { q(1) });
        assert!(canonical_anomaly(cat.clone(), &a).is_err());
        let k = Arc::new(Algebra::ground());
        let xi = a.values().iter().map(|(&p, v)| (p, Matrix::from_vec(1, 1, vec![v.clone()]))).collect();
        let j = AnomalyFunctor::new(cat, vec![k.clone()], vec![Bimodule::regular(&k); 3], xi).unwrap();
        assert!(j.validate().iter().any(|v| v.check == "anomaly.associativity"));
    }

    #[test]
    fn constant_matrix_anomaly_validates() {
        let cat = Arc::new(FinCategory::delooping(&GroupTable::cyclic(2)));
        let j = constant_anomaly(cat, Arc::new(Algebra::matrix_algebra(2))).unwrap();
        assert!(j.validate().is_empty());
    }

    #[test]
    fn wrong_corner_algebra_is_an_error() {
        let cat = Arc::new(FinCategory::delooping(&GroupTable::cyclic(2)));
        let a = Arc::new(Algebra::matrix_algebra(2));
        let k = Arc::new(Algebra::ground());
        let mors = vec![Bimodule::regular(&a), Bimodule::regular(&k)];
        let xi = cat.composable_pairs().into_iter().map(|p| (p, Matrix::identity(1))).collect();
        assert!(AnomalyFunctor::new(cat, vec![a], mors, xi).is_err());
    }
}
