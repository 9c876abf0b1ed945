//! Twisted group algebras `K^a[G]`, the monoid extension `M_a`, and the
//! factorization of projective data through `K^a[G]`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{is_algebra_isomorphism, Algebra};
use crate::bimodule::Bimodule;
use crate::category::FinCategory;
use crate::cocycle::{coboundary, Cochain1, Cocycle2, EncodedScalar, ScalarEncoding};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::matrix::Matrix;
use crate::report::{Findings, Violation};
use crate::reps::ProjectiveRep;
use crate::scalar::Rational;
use crate::{QAlgebra, QBimodule, QMatrix};

fn twisted_consts(g: &GroupTable, value: impl Fn(usize, usize) -> Rational) -> Vec<Vec<Vec<Rational>>> {
    let n = g.order();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut v = vec![Rational::zero(); n];
                    v[g.mul(a, b)] = value(a, b);
                    v
                })
                .collect()
        })
        .collect()
}

fn check_delooping(g: &GroupTable, alpha: &Cocycle2) -> Result<()> {
    if **alpha.category() != FinCategory::delooping(g) {
        return Err(Error::CategoryMismatch);
    }
    Ok(())
}

/// `K^a[G]` with basis `x_g` and `x_g x_h = a(g,h) x_{gh}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedGroupAlgebra {
    group: GroupTable,
    alpha: Cocycle2,
    algebra: Arc<QAlgebra>,
}

pub fn twisted_group_algebra(g: &GroupTable, alpha: &Cocycle2) -> Result<TwistedGroupAlgebra> {
    check_delooping(g, alpha)?;
    if let Some(v) = alpha.validate().first() {
        return Err(Error::InvalidCocycle(v.to_string()));
    }
    let consts = twisted_consts(g, |a, b| alpha.value(a, b).clone());
    let unit = Algebra::find_unit(g.order(), &consts).ok_or_else(|| Error::InvalidData("twisted algebra has no unit".into()))?;
    let algebra = Algebra::new(format!("K^a[G{}]", g.order()), consts, unit)?;
    if let Some(v) = algebra.validate().first() {
        return Err(Error::InvalidData(v.to_string()));
    }
    Ok(TwistedGroupAlgebra { group: g.clone(), alpha: alpha.clone(), algebra: Arc::new(algebra) })
}

impl TwistedGroupAlgebra {
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn alpha(&self) -> &Cocycle2 {
        &self.alpha
    }

    pub fn algebra(&self) -> &Arc<QAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// `(is_cocycle, is_associative)` for an arbitrary `|G| x |G|` table of
/// nonzero values. The second flag comes from the structure constants.
pub fn consistency_check(g: &GroupTable, table: &[Vec<Rational>]) -> Result<(bool, bool)> {
    let n = g.order();
    if table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("table must be {n}x{n}")));
    }
    if table.iter().flatten().any(Zero::is_zero) {
        return Err(Error::InvalidData("table has a zero value".into()));
    }
    let alpha = Cocycle2::from_fn(Arc::new(FinCategory::delooping(g)), |a, b| table[a][b].clone());
    let is_cocycle = alpha.validate().is_empty();
    let consts = twisted_consts(g, |a, b| table[a][b].clone());
    let unit = Algebra::find_unit(n, &consts).unwrap_or_else(|| vec![Rational::zero(); n]);
    let algebra = Algebra::new("table", consts, unit)?;
    let is_associative = algebra.validate().iter().all(|v| v.check != "algebra.associativity");
    Ok((is_cocycle, is_associative))
}

/// The left `K^a[G]`-module with `x_g` acting by `rho(g)`.
pub fn proj_to_module(t: &TwistedGroupAlgebra, rho: &ProjectiveRep) -> Result<QBimodule> {
    if rho.category() != t.alpha.category() && **rho.category() != **t.alpha.category() {
        return Err(Error::CategoryMismatch);
    }
    if rho.scalars() != &t.alpha {
        return Err(Error::CocycleMismatch("representation has a different cocycle".into()));
    }
    if let Some(v) = rho.validate().first() {
        return Err(Error::InvalidData(v.to_string()));
    }
    let m = Bimodule::left_module(&t.algebra, rho.dim(0), rho.matrices().to_vec())?;
    if let Some(v) = m.validate().first() {
        return Err(Error::InvalidData(v.to_string()));
    }
    Ok(m)
}

/// `rho(g)` is the action of `x_g`.
pub fn module_to_proj(t: &TwistedGroupAlgebra, m: &QBimodule) -> Result<ProjectiveRep> {
    if !m.left_algebra().same_table(&t.algebra) || m.right_algebra().dim() != 1 {
        return Err(Error::AlgebraMismatch("expected a left module over the twisted algebra".into()));
    }
    if let Some(v) = m.validate().first() {
        return Err(Error::InvalidData(v.to_string()));
    }
    ProjectiveRep::new(t.alpha.category().clone(), vec![m.dim()], m.left_action().to_vec(), t.alpha.clone())
}

/// Element `(g, lambda)` of `M_a`, with `lambda` in exponent coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement {
    pub group: usize,
    pub value: EncodedScalar,
}

/// `G x <values of a>` with `(g1,l1)(g2,l2) = (g1 g2, a(g1,g2) l1 l2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionMonoid {
    group: GroupTable,
    encoding: ScalarEncoding,
    alpha: Vec<Vec<EncodedScalar>>,
}

fn combine(a: &EncodedScalar, b: &EncodedScalar) -> EncodedScalar {
    EncodedScalar {
        negative: a.negative ^ b.negative,
        exponents: a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect(),
    }
}

fn negate(a: &EncodedScalar) -> EncodedScalar {
    EncodedScalar { negative: a.negative, exponents: a.exponents.iter().map(|x| -x).collect() }
}

pub fn extension_monoid(g: &GroupTable, alpha: &Cocycle2) -> Result<ExtensionMonoid> {
    check_delooping(g, alpha)?;
    if let Some(v) = alpha.validate().first() {
        return Err(Error::InvalidCocycle(v.to_string()));
    }
    let encoding = ScalarEncoding::for_values(alpha.values().values())?;
    let n = g.order();
    let table = (0..n)
        .map(|a| (0..n).map(|b| encoding.encode(alpha.value(a, b)).expect("value uses listed primes")).collect())
        .collect();
    Ok(ExtensionMonoid { group: g.clone(), encoding, alpha: table })
}

impl ExtensionMonoid {
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn encoding(&self) -> &ScalarEncoding {
        &self.encoding
    }

    /// Rank of the free part of the value group.
    pub fn rank(&self) -> usize {
        self.encoding.primes().len()
    }

    pub fn zero_value(&self) -> EncodedScalar {
        EncodedScalar { negative: false, exponents: vec![BigInt::zero(); self.rank()] }
    }

    /// `(g, lambda)`, or `None` when `lambda` leaves the value group.
    pub fn element(&self, g: usize, lambda: &Rational) -> Option<MonoidElement> {
        Some(MonoidElement { group: g, value: self.encoding.encode(lambda)? })
    }

    pub fn scalar(&self, x: &MonoidElement) -> Rational {
        self.encoding.decode(&x.value)
    }

    pub fn mul(&self, x: &MonoidElement, y: &MonoidElement) -> MonoidElement {
        let twist = &self.alpha[x.group][y.group];
        MonoidElement { group: self.group.mul(x.group, y.group), value: combine(twist, &combine(&x.value, &y.value)) }
    }

    /// Generators of the value group: the sign and one per prime.
    pub fn value_generators(&self) -> Vec<EncodedScalar> {
        let mut out = vec![EncodedScalar { negative: true, exponents: vec![BigInt::zero(); self.rank()] }];
        for i in 0..self.rank() {
            let mut e = self.zero_value();
            e.exponents[i] = BigInt::one();
            out.push(e);
        }
        out
    }

    /// Test elements `(g, 0)` and `(g, generator)`.
    pub fn test_elements(&self) -> Vec<MonoidElement> {
        let mut values = vec![self.zero_value()];
        values.extend(self.value_generators());
        (0..self.group.order())
            .flat_map(|g| values.iter().map(move |v| MonoidElement { group: g, value: v.clone() }))
            .collect()
    }

    /// Associativity on all triples of test elements.
    pub fn verify_associativity(&self) -> Findings {
        let elems = self.test_elements();
        let mut out = Vec::new();
        for x in &elems {
            for y in &elems {
                let xy = self.mul(x, y);
                for z in &elems {
                    if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                        let loc = format!("({}, {}, {})", self.group.label(x.group), self.group.label(y.group), self.group.label(z.group));
                        out.push(Violation::new("monoid.associativity", loc, "(xy)z != x(yz)"));
                    }
                }
            }
        }
        out
    }

    /// Solves `u x = x = x u` over the test elements: the candidate is
    /// `(e, a(e,e)^-1)`.
    pub fn unit(&self) -> Option<MonoidElement> {
        let e = self.group.identity();
        let u = MonoidElement { group: e, value: negate(&self.alpha[e][e]) };
        self.test_elements().iter().all(|x| &self.mul(&u, x) == x && &self.mul(x, &u) == x).then_some(u)
    }
}

/// A right `B`-module `N` with right-linear endomorphisms `xi_g`.
#[derive(Clone, Debug, PartialEq)]
pub struct KanCandidate {
    pub algebra_b: Arc<QAlgebra>,
    pub module_n: QBimodule,
    pub xi_maps: Vec<QMatrix>,
}

impl KanCandidate {
    pub fn new(algebra_b: Arc<QAlgebra>, module_n: QBimodule, xi_maps: Vec<QMatrix>) -> Result<Self> {
        if module_n.left_algebra().dim() != 1 || !module_n.right_algebra().same_table(&algebra_b) {
            return Err(Error::AlgebraMismatch("N must be a right B-module".into()));
        }
        let n = module_n.dim();
        if xi_maps.iter().any(|m| m.shape() != (n, n)) {
            return Err(Error::DimensionMismatch("xi maps must be endomorphisms of N".into()));
        }
        Ok(KanCandidate { algebra_b, module_n, xi_maps })
    }

    /// Right-linearity of each `xi_g` and `xi_g xi_h = a(g,h) xi_{gh}`.
    pub fn validate(&self, t: &TwistedGroupAlgebra) -> Findings {
        let g = &t.group;
        if self.xi_maps.len() != g.order() {
            return vec![Violation::new("kan.shape", "xi", format!("expected {} maps, got {}", g.order(), self.xi_maps.len()))];
        }
        let mut out = Vec::new();
        for (a, xi) in self.xi_maps.iter().enumerate() {
            if self.module_n.right_action().iter().any(|r| xi.mul(r) != r.mul(xi)) {
                out.push(Violation::new("kan.linearity", g.label(a), "xi is not right B-linear"));
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = self.xi_maps[a].mul(&self.xi_maps[b]);
                if lhs != self.xi_maps[g.mul(a, b)].scale(t.alpha.value(a, b)) {
                    out.push(Violation::new("kan.relation", format!("({}, {})", g.label(a), g.label(b)), "xi_g xi_h != a(g,h) xi_gh"));
                }
            }
        }
        out
    }
}

/// The `(K^a[G], B)`-bimodule obtained from a candidate, with the findings
/// that prevented it when it is absent.
#[derive(Clone, Debug, PartialEq)]
pub struct KanFactorization {
    pub bimodule: Option<QBimodule>,
    pub findings: Findings,
}

pub fn kan_factorization(c: &KanCandidate, t: &TwistedGroupAlgebra) -> Result<KanFactorization> {
    let mut findings = c.validate(t);
    if !findings.is_empty() {
        return Ok(KanFactorization { bimodule: None, findings });
    }
    let n = &c.module_n;
    let m = Bimodule::new(t.algebra.clone(), c.algebra_b.clone(), n.dim(), c.xi_maps.clone(), n.right_action().to_vec())?;
    findings.extend(m.validate());
    let bimodule = findings.is_empty().then_some(m);
    Ok(KanFactorization { bimodule, findings })
}

/// `(K^{d beta}[G], K[G], phi)` with `phi(x_g) = beta(g) y_g`, verified as an
/// algebra isomorphism.
pub fn coboundary_isomorphism(g: &GroupTable, beta: &Cochain1) -> Result<(TwistedGroupAlgebra, QAlgebra, QMatrix)> {
    let t = twisted_group_algebra(g, &coboundary(beta))?;
    let plain = Algebra::group_algebra(g);
    let phi = Matrix::diagonal(beta.values());
    if !is_algebra_isomorphism(&t.algebra, &plain, &phi) {
        return Err(Error::NotInvertible("diagonal change of basis is not an algebra map".into()));
    }
    Ok((t, plain, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::regular_projective_rep;
    use crate::scalar::{frac, q};
    use crate::tensor::{tensor_over, unitor_left};

    fn on(g: &GroupTable, f: impl FnMut(usize, usize) -> Rational) -> Cocycle2 {
        Cocycle2::from_fn(Arc::new(FinCategory::delooping(g)), f)
    }

    fn quaternion() -> (GroupTable, Cocycle2) {
        let g = GroupTable::klein_four();
        let alpha = on(&g, |a, b| {
            let (a1, a2, b1, b2) = (a & 1, a >> 1, b & 1, b >> 1);
            if (a1 * b1 + a2 * b2 + a1 * b2) % 2 == 1 {
                q(-1)
            } else {
                q(1)
            }
        });
        (g, alpha)
    }

    #[test]
    fn trivial_twist_is_the_group_algebra() {
        let g = GroupTable::cyclic(2);
        let t = twisted_group_algebra(&g, &on(&g, |_, _| q(1))).unwrap();
        assert!(t.algebra().same_table(&Algebra::group_algebra(&g)));
        assert_eq!(t.algebra().mul_basis(1, 1), vec![q(1), q(0)]);
    }

    #[test]
    fn sign_twist_squares_to_minus_one() {
        let g = GroupTable::cyclic(2);
        let t = twisted_group_algebra(&g, &on(&g, |a, b| if a == 1 && b == 1 { q(-1) } else { q(1) })).unwrap();
        assert_eq!(t.algebra().mul_basis(1, 1), vec![q(-1), q(0)]);
        assert_eq!(t.algebra().center().len(), 2);
    }

    #[test]
    fn quaternion_algebra_has_trivial_center() {
        let (g, alpha) = quaternion();
        let t = twisted_group_algebra(&g, &alpha).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.algebra().center().len(), 1);
        for a in 0..4 {
            for b in 0..4 {
                assert!(t.algebra().mul_basis(a, b).iter().any(|x| !x.is_zero()));
            }
        }
    }

    #[test]
    fn non_normalized_unit_is_solved() {
        let g = GroupTable::cyclic(2);
        let t = twisted_group_algebra(&g, &on(&g, |_, _| q(2))).unwrap();
        assert_eq!(t.algebra().unit(), &[frac(1, 2), q(0)]);
        let m = extension_monoid(&g, t.alpha()).unwrap();
        let u = m.unit().unwrap();
        assert_eq!(m.scalar(&u), frac(1, 2));
        assert!(m.verify_associativity().is_empty());
    }

    #[test]
    fn consistency_flags_agree() {
        let g = GroupTable::cyclic(3);
        let mut table = vec![vec![q(1); 3]; 3];
        assert_eq!(consistency_check(&g, &table).unwrap(), (true, true));
        table[1][2] = q(5);
        assert_eq!(consistency_check(&g, &table).unwrap(), (false, false));
        table[1][2] = q(0);
        assert!(consistency_check(&g, &table).is_err());
    }

    #[test]
    fn sign_monoid_multiplication() {
        let g = GroupTable::cyclic(2);
        let m = extension_monoid(&g, &on(&g, |a, b| if a == 1 && b == 1 { q(-1) } else { q(1) })).unwrap();
        let x = m.element(1, &q(1)).unwrap();
        let sq = m.mul(&x, &x);
        assert_eq!(sq.group, 0);
        assert!(sq.value.negative);
        assert_eq!(m.unit().unwrap(), m.element(0, &q(1)).unwrap());
    }

    #[test]
    fn module_roundtrip_on_regular_rep() {
        let (g, alpha) = quaternion();
        let t = twisted_group_algebra(&g, &alpha).unwrap();
        let rho = regular_projective_rep(&alpha).unwrap();
        let m = proj_to_module(&t, &rho).unwrap();
        assert_eq!(m.left_action(), Bimodule::left_regular(t.algebra()).left_action());
        assert_eq!(module_to_proj(&t, &m).unwrap(), rho);
        let zero = Bimodule::zero(t.algebra(), &Arc::new(Algebra::ground()));
        assert_eq!(module_to_proj(&t, &zero).unwrap().dim(0), 0);
    }

    #[test]
    fn wrong_cocycle_is_rejected() {
        let (g, alpha) = quaternion();
        let t = twisted_group_algebra(&g, &alpha).unwrap();
        let rho = regular_projective_rep(&on(&g, |_, _| q(1))).unwrap();
        assert!(matches!(proj_to_module(&t, &rho), Err(Error::CocycleMismatch(_))));
    }

    #[test]
    fn coboundary_twist_is_untwisted() {
        let g = GroupTable::symmetric3();
        let beta = Cochain1::new(Arc::new(FinCategory::delooping(&g)), (1..=6).map(|i| frac(i, 7 - i)).collect()).unwrap();
        let (t, plain, phi) = coboundary_isomorphism(&g, &beta).unwrap();
        assert!(is_algebra_isomorphism(&t.algebra, &plain, &phi));
    }

    #[test]
    fn kan_factorization_of_regular_candidate() {
        let (g, alpha) = quaternion();
        let t = twisted_group_algebra(&g, &alpha).unwrap();
        let b = t.algebra().clone();
        let xi = (0..4).map(|a| b.left_mult(a)).collect();
        let cand = KanCandidate::new(b.clone(), Bimodule::right_regular(&b), xi).unwrap();
        let out = kan_factorization(&cand, &t).unwrap();
        assert!(out.findings.is_empty());
        let m = out.bimodule.unwrap();
        assert_eq!(m, Bimodule::regular(&b));
        let tens = tensor_over(&Bimodule::regular(t.algebra()), &m).unwrap();
        assert_eq!(tens.product.dim(), m.dim());
        assert!(unitor_left(&m).unwrap().is_isomorphism());
    }

    #[test]
    fn kan_factorization_from_projective_rep() {
        let (g, alpha) = quaternion();
        let t = twisted_group_algebra(&g, &alpha).unwrap();
        let rho = regular_projective_rep(&alpha).unwrap();
        let k = Arc::new(Algebra::ground());
        let cand = KanCandidate::new(k.clone(), Bimodule::right_module(&k, 4, vec![Matrix::identity(4)]).unwrap(), rho.matrices().to_vec()).unwrap();
        let out = kan_factorization(&cand, &t).unwrap();
        assert_eq!(out.bimodule.unwrap(), proj_to_module(&t, &rho).unwrap());

        let mut broken = cand.clone();
        broken.xi_maps[1] = broken.xi_maps[1].scale(&q(2));
        let out = kan_factorization(&broken, &t).unwrap();
        assert!(out.bimodule.is_none());
        assert!(out.findings.iter().any(|v| v.check == "kan.relation" && v.location == "(a, a)"));
    }

    #[test]
    fn sign_twist_has_no_nontrivial_idempotents() {
        // With conj(a + b x) = a - b x, z conj(z) = (a^2 + b^2) 1, so every
        // nonzero z is invertible and e(1 - e) = 0 forces e in {0, 1}.
        let g = GroupTable::cyclic(2);
        let t = twisted_group_algebra(&g, &on(&g, |a, b| if a == 1 && b == 1 { q(-1) } else { q(1) })).unwrap();
        let a = t.algebra();
        let conj = Matrix::diagonal(&[q(1), q(-1)]);
        for i in 0..2 {
            for j in 0..2 {
                let (ei, ej) = (a.basis(i), a.basis(j));
                let s: Vec<_> = a.mul(&ei, &conj.apply(&ej)).iter().zip(a.mul(&ej, &conj.apply(&ei))).map(|(x, y)| x + y).collect();
                let expect = if i == j { vec![q(2), q(0)] } else { vec![q(0), q(0)] };
                assert_eq!(s, expect);
            }
        }
        let idempotent = |z: &[Rational]| a.mul(z, z) == z;
        for (x, y) in [(0, 0), (1, 0), (1, 1), (0, 1), (2, -1)] {
            let z = vec![q(x), q(y)];
            assert_eq!(idempotent(&z), y == 0 && x <= 1);
        }
    }
}
