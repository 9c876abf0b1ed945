//! The shipped example manifests, built from the core constructions.
//! `cargo run -p morita-lab --example gen_fixtures` writes them to disk.

use std::sync::Arc;

use morita_core::algebra::Algebra;
use morita_core::anomaly::{canonical_anomaly, constant_anomaly, AnomalyFunctor};
use morita_core::bimodule::Bimodule;
use morita_core::category::{FinCategory, Morphism};
use morita_core::cocycle::{coboundary, Cochain1, Cocycle2};
use morita_core::extension::{default_test_modules, restrict_to_st};
use morita_core::group::GroupTable;
use morita_core::reps::{anomalous_from_proj, canonical_alpha_structure, regular_projective_rep, AlphaStructure, AnomalousRep, ProjectiveRep};
use morita_core::tensor::{column_module, row_module, unitor_right};
use morita_core::twisted::{twisted_group_algebra, KanCandidate};
use morita_core::{frac, q, Matrix, Rational};

use crate::manifest::*;

/// A fixture file: name relative to the fixture directory and contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub contents: String,
}

fn fixture(name: &str, m: Manifest) -> Fixture {
    Fixture { name: name.into(), contents: m.to_json() }
}

fn delooping(g: &GroupTable) -> Arc<FinCategory> {
    Arc::new(FinCategory::delooping(g))
}

pub fn sign_cocycle(g: &GroupTable) -> Cocycle2 {
    Cocycle2::from_fn(delooping(g), |a, b| if a == 1 && b == 1 { q(-1) } else { q(1) })
}

/// `(-1)^{a1 b1 + a2 b2 + a1 b2}` on `V4 = F_2^2`, whose twisted group
/// algebra is Hamilton's quaternions.
pub fn quaternion_cocycle() -> (GroupTable, Cocycle2) {
    let g = GroupTable::klein_four();
    let alpha = Cocycle2::from_fn(delooping(&g), |a, b| {
        let (a1, a2, b1, b2) = (a & 1, a >> 1, b & 1, b >> 1);
        if (a1 * b1 + a2 * b2 + a1 * b2) % 2 == 1 {
            q(-1)
        } else {
            q(1)
        }
    });
    (g, alpha)
}

/// Objects of an end-to-end pipeline over one anomaly.
pub struct Pipeline {
    pub group: GroupTable,
    pub anomaly: Arc<AnomalyFunctor>,
    pub xi: AlphaStructure,
    pub rho: ProjectiveRep,
    pub z: AnomalousRep,
    pub modules: Vec<(usize, morita_core::QBimodule)>,
}

fn canonical_pipeline(g: GroupTable, alpha: Cocycle2) -> Pipeline {
    let anomaly = Arc::new(canonical_anomaly(alpha.category().clone(), &alpha).expect("normalized cocycle"));
    let xi = canonical_alpha_structure(anomaly.clone(), &alpha).expect("canonical structure");
    let rho = regular_projective_rep(&alpha).expect("regular rep");
    let z = anomalous_from_proj(&rho, &xi).expect("anomalous rep");
    let modules = default_test_modules(&anomaly);
    Pipeline { group: g, anomaly, xi, rho, z, modules }
}

pub fn quaternion_pipeline() -> Pipeline {
    let (g, alpha) = quaternion_cocycle();
    canonical_pipeline(g, alpha)
}

pub fn trivial_pipeline() -> Pipeline {
    let g = GroupTable::cyclic(3);
    let alpha = Cocycle2::trivial(delooping(&g));
    canonical_pipeline(g, alpha)
}

/// The constant `M_2(Q)` anomaly on `B(Z/2)`, compared to the trivial
/// cocycle through the row module.
pub fn morita_pipeline() -> Pipeline {
    let g = GroupTable::cyclic(2);
    let c = delooping(&g);
    let m2 = Arc::new(Algebra::matrix_algebra(2));
    let anomaly = Arc::new(constant_anomaly(c.clone(), m2.clone()).expect("constant anomaly"));
    let row = row_module(&m2, 2).expect("row module");
    let back = unitor_right(&row).expect("unitor").inverse().expect("invertible").matrix;
    let xi = AlphaStructure::new(anomaly.clone(), Cocycle2::trivial(c.clone()), vec![row.clone()], vec![back.clone(), back])
        .expect("alpha structure");
    let swap = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
    let rho = ProjectiveRep::new(c.clone(), vec![2], vec![Matrix::identity(2), swap], Cocycle2::trivial(c)).expect("rep");
    let z = anomalous_from_proj(&rho, &xi).expect("anomalous rep");
    let mut modules = default_test_modules(&anomaly);
    modules.push((0, row));
    Pipeline { group: g, anomaly, xi, rho, z, modules }
}

fn pipeline_fixtures(prefix: &str, p: &Pipeline) -> Vec<Fixture> {
    let st = restrict_to_st(&p.z).expect("restriction");
    vec![
        fixture(&format!("{prefix}_anomaly.json"), Manifest::new(Kind::Anomaly, &AnomalyDoc::from_anomaly(&p.anomaly))),
        fixture(&format!("{prefix}_alpha_structure.json"), Manifest::new(Kind::AlphaStructure, &AlphaStructureDoc::from_structure(&p.xi))),
        fixture(&format!("{prefix}_anomalous_rep.json"), Manifest::new(Kind::AnomalousRep, &AnomalousRepDoc::from_rep(&p.z))),
        fixture(&format!("{prefix}_st_rep.json"), Manifest::new(Kind::StRep, &StRepDoc::from_rep(&st))),
        fixture(
            &format!("{prefix}_projective_rep.json"),
            Manifest::new(Kind::ProjectiveRep, &ProjectiveRepDoc::from_rep(&p.rho, Some(&p.group))),
        ),
        fixture(&format!("{prefix}_test_modules.json"), Manifest::new(Kind::TestModules, &TestModulesDoc::from_modules(&p.anomaly, &p.modules))),
    ]
}

/// The anomalous representation with `Z(f)` scaled by 2 on the first
/// non-identity morphism.
pub fn corrupted(z: &AnomalousRep) -> AnomalousRep {
    let c = z.anomaly().category();
    let f = (0..c.num_morphisms()).find(|&f| !c.is_identity(f)).expect("a non-identity morphism");
    let mut maps = z.maps().to_vec();
    maps[f] = maps[f].scale(&q(2));
    AnomalousRep::new(z.anomaly().clone(), z.modules().to_vec(), maps).expect("same shapes")
}

fn cocycle_fixture(name: &str, g: &GroupTable, alpha: &Cocycle2) -> Fixture {
    fixture(name, Manifest::new(Kind::Cocycle, &CocycleDoc::from_group(g, alpha)))
}

fn kan_fixtures() -> Vec<Fixture> {
    let (g, alpha) = quaternion_cocycle();
    let t = twisted_group_algebra(&g, &alpha).expect("quaternions");
    let b = t.algebra().clone();
    let regular = KanCandidate::new(b.clone(), Bimodule::right_regular(&b), (0..4).map(|a| b.left_mult(a)).collect()).expect("candidate");
    let k = Arc::new(Algebra::ground());
    let rho = regular_projective_rep(&alpha).expect("regular rep");
    let projective =
        KanCandidate::new(k.clone(), Bimodule::right_module(&k, 4, vec![Matrix::identity(4)]).expect("module"), rho.matrices().to_vec())
            .expect("candidate");
    let mut broken = projective.clone();
    broken.xi_maps[1] = broken.xi_maps[1].scale(&q(2));
    let doc = |c: &KanCandidate| Manifest::new(Kind::KanCandidate, &KanCandidateDoc::from_candidate(c));
    vec![
        fixture("kan_regular.json", doc(&regular)),
        fixture("kan_projective.json", doc(&projective)),
        fixture("fault_kan_broken.json", doc(&broken)),
        fixture("algebra_quaternion.json", Manifest::new(Kind::Algebra, &AlgebraDoc::from_algebra(&b))),
    ]
}

/// Every shipped fixture, in a fixed order.
pub fn all_fixtures() -> Vec<Fixture> {
    let z2 = GroupTable::cyclic(2);
    let z3 = GroupTable::cyclic(3);
    let v4 = GroupTable::klein_four();
    let s3 = GroupTable::symmetric3();
    let mut out = Vec::new();
    for (name, g) in [("z2", &z2), ("z3", &z3), ("v4", &v4), ("s3", &s3)] {
        out.push(fixture(&format!("group_{name}.json"), Manifest::new(Kind::Group, &GroupDoc::from_group(g))));
    }

    out.push(cocycle_fixture("cocycle_z2_trivial.json", &z2, &Cocycle2::trivial(delooping(&z2))));
    out.push(cocycle_fixture("cocycle_z2_sign.json", &z2, &sign_cocycle(&z2)));
    let square = Cocycle2::from_fn(delooping(&z2), |a, b| if a == 1 && b == 1 { q(4) } else { q(1) });
    out.push(cocycle_fixture("cocycle_z2_square.json", &z2, &square));
    out.push(cocycle_fixture("cocycle_z3_trivial.json", &z3, &Cocycle2::trivial(delooping(&z3))));
    out.push(cocycle_fixture("cocycle_v4_quaternion.json", &v4, &quaternion_cocycle().1));
    let beta = Cochain1::new(delooping(&v4), vec![q(1), q(2), frac(-1, 3), q(5)]).expect("cochain");
    out.push(cocycle_fixture("cocycle_v4_coboundary.json", &v4, &coboundary(&beta)));
    out.push(cocycle_fixture("cocycle_s3_trivial.json", &s3, &Cocycle2::trivial(delooping(&s3))));
    let broken = Cocycle2::from_fn(delooping(&z3), |a, b| if (a, b) == (1, 1) { q(5) } else { q(1) });
    out.push(cocycle_fixture("fault_cocycle_z3_broken.json", &z3, &broken));

    let arrow = FinCategory::new(
        vec!["X".into(), "Y".into()],
        vec![
            Morphism { label: "idX".into(), source: 0, target: 0 },
            Morphism { label: "idY".into(), source: 1, target: 1 },
            Morphism { label: "f".into(), source: 0, target: 1 },
        ],
        vec![0, 1],
        &[(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2)],
    )
    .expect("arrow category");
    out.push(fixture("category_arrow.json", Manifest::new(Kind::Category, &CategoryDoc::from_category(&arrow))));
    let m2 = Arc::new(Algebra::<Rational>::matrix_algebra(2));
    out.push(fixture("algebra_m2.json", Manifest::new(Kind::Algebra, &AlgebraDoc::from_algebra(&m2))));
    let col = column_module(&m2, 2).expect("column module");
    out.push(fixture("bimodule_m2_column.json", Manifest::new(Kind::Bimodule, &BimoduleDoc::from_bimodule(&col))));

    let quaternion = quaternion_pipeline();
    out.extend(pipeline_fixtures("quaternion", &quaternion));
    out.push(fixture(
        "fault_quaternion_anomalous_rep_corrupt.json",
        Manifest::new(Kind::AnomalousRep, &AnomalousRepDoc::from_rep(&corrupted(&quaternion.z))),
    ));
    out.extend(pipeline_fixtures("trivial", &trivial_pipeline()));
    out.extend(pipeline_fixtures("morita", &morita_pipeline()));
    out.extend(kan_fixtures());

    out.push(Fixture { name: "fault_malformed.json".into(), contents: "{ \"schema_version\": \"1\", \"kind\": \n".into() });
    let mut wrong = Manifest::new(Kind::Group, &GroupDoc::from_group(&z2));
    wrong.schema_version = "2".into();
    out.push(fixture("fault_schema_version.json", wrong));
    out
}
