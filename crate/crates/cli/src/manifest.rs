//! JSON documents. Rationals are strings `"p/q"`, matrices are row-major with
//! explicit dimensions, structure constants are nested `[i][j][k]`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use morita_core::algebra::Algebra;
use morita_core::anomaly::AnomalyFunctor;
use morita_core::bimodule::Bimodule;
use morita_core::category::{FinCategory, Morphism};
use morita_core::cocycle::Cocycle2;
use morita_core::extension::STRep;
use morita_core::group::GroupTable;
use morita_core::reps::{AlphaStructure, AnomalousRep, ProjectiveRep};
use morita_core::twisted::KanCandidate;
use morita_core::{format_rational, parse_rational, Matrix, QAlgebra, QBimodule, QMatrix, Rational};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Group,
    Cocycle,
    Category,
    Algebra,
    Bimodule,
    Anomaly,
    AlphaStructure,
    AnomalousRep,
    ProjectiveRep,
    StRep,
    KanCandidate,
    TestModules,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Cocycle => "cocycle",
            Kind::Category => "category",
            Kind::Algebra => "algebra",
            Kind::Bimodule => "bimodule",
            Kind::Anomaly => "anomaly",
            Kind::AlphaStructure => "alpha_structure",
            Kind::AnomalousRep => "anomalous_rep",
            Kind::ProjectiveRep => "projective_rep",
            Kind::StRep => "st_rep",
            Kind::KanCandidate => "kan_candidate",
            Kind::TestModules => "test_modules",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema_version: String,
    pub kind: Kind,
    pub payload: serde_json::Value,
}

impl Manifest {
    pub fn new<T: Serialize>(kind: Kind, payload: &T) -> Self {
        Manifest {
            schema_version: SCHEMA_VERSION.into(),
            kind,
            payload: serde_json::to_value(payload).expect("documents serialize"),
        }
    }

    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        let m: Manifest = serde_json::from_str(text).map_err(|source| CliError::Json { path: path.into(), source })?;
        if m.schema_version != SCHEMA_VERSION {
            return Err(CliError::schema(format!("unsupported schema_version {:?}", m.schema_version)));
        }
        Ok(m)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        Self::parse(&text, path)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        fs::write(path, self.to_json()).map_err(|source| CliError::Io { path: path.into(), source })
    }

    /// The payload as `T`, after checking the kind.
    pub fn payload<T: DeserializeOwned>(&self, kind: Kind) -> CliResult<T> {
        if self.kind != kind {
            return Err(CliError::schema(format!("expected a {} manifest, found {}", kind.name(), self.kind.name())));
        }
        serde_json::from_value(self.payload.clone()).map_err(|e| CliError::schema(format!("{} payload: {e}", kind.name())))
    }
}

fn rational(s: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|e| CliError::schema(e.to_string()))
}

fn rationals(v: &[String]) -> CliResult<Vec<Rational>> {
    v.iter().map(|s| rational(s)).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &QMatrix) -> Self {
        MatrixDoc { rows: m.rows(), cols: m.cols(), entries: (0..m.rows()).map(|r| strings(m.row(r))).collect() }
    }

    pub fn to_matrix(&self) -> CliResult<QMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(CliError::schema(format!("matrix entries do not match {}x{}", self.rows, self.cols)));
        }
        let data = self.entries.iter().map(|r| rationals(r)).collect::<CliResult<Vec<_>>>()?;
        Ok(Matrix::from_vec(self.rows, self.cols, data.into_iter().flatten().collect()))
    }
}

fn matrices(docs: &[MatrixDoc]) -> CliResult<Vec<QMatrix>> {
    docs.iter().map(MatrixDoc::to_matrix).collect()
}

fn matrix_docs(ms: &[QMatrix]) -> Vec<MatrixDoc> {
    ms.iter().map(MatrixDoc::from_matrix).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub labels: Vec<String>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupDoc {
    pub fn from_group(g: &GroupTable) -> Self {
        GroupDoc { labels: g.labels().to_vec(), identity: g.identity(), table: g.table() }
    }

    pub fn to_group(&self) -> CliResult<GroupTable> {
        Ok(GroupTable::new(self.labels.clone(), self.identity, self.table.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: Vec<usize>,
    /// Triples `[g, f, g . f]`.
    pub compositions: Vec<[usize; 3]>,
}

impl CategoryDoc {
    pub fn from_category(c: &FinCategory) -> Self {
        let compositions = c.composable_pairs().into_iter().map(|(g, f)| [g, f, c.comp(g, f)]).collect();
        CategoryDoc {
            objects: c.objects().to_vec(),
            morphisms: c.morphisms().iter().map(|m| MorphismDoc { label: m.label.clone(), source: m.source, target: m.target }).collect(),
            identities: c.identities().to_vec(),
            compositions,
        }
    }

    /// Range checks only; the category axioms are checked by validation.
    pub fn to_category(&self) -> CliResult<FinCategory> {
        let morphisms = self.morphisms.iter().map(|m| Morphism { label: m.label.clone(), source: m.source, target: m.target }).collect();
        let comps: Vec<_> = self.compositions.iter().map(|&[g, f, gf]| (g, f, gf)).collect();
        Ok(FinCategory::from_parts(self.objects.clone(), morphisms, self.identities.clone(), &comps)?)
    }
}

/// A category given directly or as the delooping of a group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseDoc {
    Group(GroupDoc),
    Category(CategoryDoc),
}

impl BaseDoc {
    pub fn to_category(&self) -> CliResult<FinCategory> {
        match self {
            BaseDoc::Group(g) => Ok(FinCategory::delooping(&g.to_group()?)),
            BaseDoc::Category(c) => c.to_category(),
        }
    }

    pub fn group(&self) -> Option<&GroupDoc> {
        match self {
            BaseDoc::Group(g) => Some(g),
            BaseDoc::Category(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairValueDoc {
    pub g: usize,
    pub f: usize,
    pub value: String,
}

fn pair_values(values: &[PairValueDoc]) -> CliResult<BTreeMap<(usize, usize), Rational>> {
    let mut out = BTreeMap::new();
    for v in values {
        if out.insert((v.g, v.f), rational(&v.value)?).is_some() {
            return Err(CliError::schema(format!("pair ({}, {}) given twice", v.g, v.f)));
        }
    }
    Ok(out)
}

fn pair_docs(alpha: &Cocycle2) -> Vec<PairValueDoc> {
    alpha.values().iter().map(|(&(g, f), v)| PairValueDoc { g, f, value: format_rational(v) }).collect()
}

fn cocycle_on(cat: Arc<FinCategory>, values: &[PairValueDoc]) -> CliResult<Cocycle2> {
    Ok(Cocycle2::new(cat, pair_values(values)?)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    pub base: BaseDoc,
    pub values: Vec<PairValueDoc>,
}

impl CocycleDoc {
    pub fn from_group(g: &GroupTable, alpha: &Cocycle2) -> Self {
        CocycleDoc { base: BaseDoc::Group(GroupDoc::from_group(g)), values: pair_docs(alpha) }
    }

    pub fn from_category(alpha: &Cocycle2) -> Self {
        CocycleDoc { base: BaseDoc::Category(CategoryDoc::from_category(alpha.category())), values: pair_docs(alpha) }
    }

    pub fn to_cocycle(&self) -> CliResult<Cocycle2> {
        cocycle_on(Arc::new(self.base.to_category()?), &self.values)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub label: String,
    pub dim: usize,
    pub structure_constants: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
}

impl AlgebraDoc {
    pub fn from_algebra(a: &QAlgebra) -> Self {
        let consts = a.structure_constants().iter().map(|r| r.iter().map(|v| strings(v)).collect()).collect();
        AlgebraDoc { label: a.label().into(), dim: a.dim(), structure_constants: consts, unit: strings(a.unit()) }
    }

    pub fn to_algebra(&self) -> CliResult<QAlgebra> {
        if self.unit.len() != self.dim {
            return Err(CliError::schema(format!("unit has length {} for dimension {}", self.unit.len(), self.dim)));
        }
        let consts = self
            .structure_constants
            .iter()
            .map(|r| r.iter().map(|v| rationals(v)).collect::<CliResult<Vec<_>>>())
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Algebra::new(self.label.clone(), consts, rationals(&self.unit)?)?)
    }
}

/// Action matrices of a bimodule whose algebras are known from context.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub dim: usize,
    pub left_action: Vec<MatrixDoc>,
    pub right_action: Vec<MatrixDoc>,
}

impl ModuleDoc {
    pub fn from_bimodule(m: &QBimodule) -> Self {
        ModuleDoc { dim: m.dim(), left_action: matrix_docs(m.left_action()), right_action: matrix_docs(m.right_action()) }
    }

    pub fn to_bimodule(&self, left: &Arc<QAlgebra>, right: &Arc<QAlgebra>) -> CliResult<QBimodule> {
        Ok(Bimodule::new(left.clone(), right.clone(), self.dim, matrices(&self.left_action)?, matrices(&self.right_action)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub left: AlgebraDoc,
    pub right: AlgebraDoc,
    pub dim: usize,
    pub left_action: Vec<MatrixDoc>,
    pub right_action: Vec<MatrixDoc>,
}

impl BimoduleDoc {
    pub fn from_bimodule(m: &QBimodule) -> Self {
        BimoduleDoc {
            left: AlgebraDoc::from_algebra(m.left_algebra()),
            right: AlgebraDoc::from_algebra(m.right_algebra()),
            dim: m.dim(),
            left_action: matrix_docs(m.left_action()),
            right_action: matrix_docs(m.right_action()),
        }
    }

    pub fn to_bimodule(&self) -> CliResult<QBimodule> {
        let (l, r) = (Arc::new(self.left.to_algebra()?), Arc::new(self.right.to_algebra()?));
        let actions = ModuleDoc { dim: self.dim, left_action: self.left_action.clone(), right_action: self.right_action.clone() };
        actions.to_bimodule(&l, &r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntertwinerDoc {
    pub g: usize,
    pub f: usize,
    pub matrix: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnomalyDoc {
    pub category: CategoryDoc,
    pub algebras: Vec<AlgebraDoc>,
    /// `J(f)` as a `(J(target), J(source))`-bimodule.
    pub bimodules: Vec<ModuleDoc>,
    pub intertwiners: Vec<IntertwinerDoc>,
}

impl AnomalyDoc {
    pub fn from_anomaly(j: &AnomalyFunctor) -> Self {
        AnomalyDoc {
            category: CategoryDoc::from_category(j.category()),
            algebras: j.algebras().iter().map(|a| AlgebraDoc::from_algebra(a)).collect(),
            bimodules: j.bimodules().iter().map(ModuleDoc::from_bimodule).collect(),
            intertwiners: j
                .intertwiners()
                .iter()
                .map(|(&(g, f), m)| IntertwinerDoc { g, f, matrix: MatrixDoc::from_matrix(m) })
                .collect(),
        }
    }

    pub fn to_anomaly(&self) -> CliResult<AnomalyFunctor> {
        let cat = Arc::new(self.category.to_category()?);
        if let Some(v) = cat.validate().first() {
            return Err(morita_core::Error::InvalidCategory(v.to_string()).into());
        }
        let algs = self.algebras.iter().map(|a| a.to_algebra().map(Arc::new)).collect::<CliResult<Vec<_>>>()?;
        if algs.len() != cat.num_objects() || self.bimodules.len() != cat.num_morphisms() {
            return Err(CliError::schema("anomaly needs one algebra per object and one bimodule per morphism"));
        }
        let bimods = self
            .bimodules
            .iter()
            .enumerate()
            .map(|(f, m)| m.to_bimodule(&algs[cat.target(f)], &algs[cat.source(f)]))
            .collect::<CliResult<Vec<_>>>()?;
        let mut xi = BTreeMap::new();
        for i in &self.intertwiners {
            if xi.insert((i.g, i.f), i.matrix.to_matrix()?).is_some() {
                return Err(CliError::schema(format!("intertwiner ({}, {}) given twice", i.g, i.f)));
            }
        }
        Ok(AnomalyFunctor::new(cat, algs, bimods, xi)?)
    }
}

fn ground() -> Arc<QAlgebra> {
    Arc::new(Algebra::ground())
}

/// Right `J(X)`-modules, one per object.
fn right_modules(j: &AnomalyFunctor, docs: &[ModuleDoc]) -> CliResult<Vec<QBimodule>> {
    if docs.len() != j.category().num_objects() {
        return Err(CliError::schema("one module per object is required"));
    }
    let k = ground();
    docs.iter().enumerate().map(|(x, m)| m.to_bimodule(&k, j.algebra(x))).collect()
}

/// Left `J(X)`-modules, one per object.
fn left_modules(j: &AnomalyFunctor, docs: &[ModuleDoc]) -> CliResult<Vec<QBimodule>> {
    if docs.len() != j.category().num_objects() {
        return Err(CliError::schema("one module per object is required"));
    }
    let k = ground();
    docs.iter().enumerate().map(|(x, m)| m.to_bimodule(j.algebra(x), &k)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaStructureDoc {
    pub anomaly: AnomalyDoc,
    pub alpha: Vec<PairValueDoc>,
    pub modules: Vec<ModuleDoc>,
    pub maps: Vec<MatrixDoc>,
}

impl AlphaStructureDoc {
    pub fn from_structure(xi: &AlphaStructure) -> Self {
        AlphaStructureDoc {
            anomaly: AnomalyDoc::from_anomaly(xi.anomaly()),
            alpha: pair_docs(xi.alpha()),
            modules: xi.modules().iter().map(ModuleDoc::from_bimodule).collect(),
            maps: matrix_docs(xi.maps()),
        }
    }

    pub fn to_structure(&self) -> CliResult<AlphaStructure> {
        let j = Arc::new(self.anomaly.to_anomaly()?);
        let alpha = cocycle_on(j.category().clone(), &self.alpha)?;
        let mods = right_modules(&j, &self.modules)?;
        Ok(AlphaStructure::new(j, alpha, mods, matrices(&self.maps)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnomalousRepDoc {
    pub anomaly: AnomalyDoc,
    pub modules: Vec<ModuleDoc>,
    pub maps: Vec<MatrixDoc>,
}

impl AnomalousRepDoc {
    pub fn from_rep(z: &AnomalousRep) -> Self {
        AnomalousRepDoc {
            anomaly: AnomalyDoc::from_anomaly(z.anomaly()),
            modules: z.modules().iter().map(ModuleDoc::from_bimodule).collect(),
            maps: matrix_docs(z.maps()),
        }
    }

    pub fn to_rep(&self) -> CliResult<AnomalousRep> {
        let j = Arc::new(self.anomaly.to_anomaly()?);
        let mods = left_modules(&j, &self.modules)?;
        Ok(AnomalousRep::new(j, mods, matrices(&self.maps)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectiveRepDoc {
    pub base: BaseDoc,
    pub dims: Vec<usize>,
    pub matrices: Vec<MatrixDoc>,
    pub scalars: Vec<PairValueDoc>,
}

impl ProjectiveRepDoc {
    pub fn from_rep(rho: &ProjectiveRep, group: Option<&GroupTable>) -> Self {
        let base = match group {
            Some(g) => BaseDoc::Group(GroupDoc::from_group(g)),
            None => BaseDoc::Category(CategoryDoc::from_category(rho.category())),
        };
        ProjectiveRepDoc { base, dims: rho.dims().to_vec(), matrices: matrix_docs(rho.matrices()), scalars: pair_docs(rho.scalars()) }
    }

    pub fn to_rep(&self) -> CliResult<ProjectiveRep> {
        let cat = Arc::new(self.base.to_category()?);
        let scalars = cocycle_on(cat.clone(), &self.scalars)?;
        Ok(ProjectiveRep::new(cat, self.dims.clone(), matrices(&self.matrices)?, scalars)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StRepDoc {
    pub anomaly: AnomalyDoc,
    pub dims: Vec<usize>,
    /// `actions[f][a]` is `F(f, e_a)` for the basis of `J(f)`.
    pub actions: Vec<Vec<MatrixDoc>>,
}

impl StRepDoc {
    pub fn from_rep(f: &STRep) -> Self {
        StRepDoc {
            anomaly: AnomalyDoc::from_anomaly(f.anomaly()),
            dims: f.dims().to_vec(),
            actions: f.actions().iter().map(|a| matrix_docs(a)).collect(),
        }
    }

    pub fn to_rep(&self) -> CliResult<STRep> {
        let j = Arc::new(self.anomaly.to_anomaly()?);
        let actions = self.actions.iter().map(|a| matrices(a)).collect::<CliResult<Vec<_>>>()?;
        Ok(STRep::new(j, self.dims.clone(), actions)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KanCandidateDoc {
    pub algebra_b: AlgebraDoc,
    /// A right `B`-module.
    pub module_n: ModuleDoc,
    pub xi_maps: Vec<MatrixDoc>,
}

impl KanCandidateDoc {
    pub fn from_candidate(c: &KanCandidate) -> Self {
        KanCandidateDoc {
            algebra_b: AlgebraDoc::from_algebra(&c.algebra_b),
            module_n: ModuleDoc::from_bimodule(&c.module_n),
            xi_maps: matrix_docs(&c.xi_maps),
        }
    }

    pub fn to_candidate(&self) -> CliResult<KanCandidate> {
        let b = Arc::new(self.algebra_b.to_algebra()?);
        let n = self.module_n.to_bimodule(&ground(), &b)?;
        Ok(KanCandidate::new(b, n, matrices(&self.xi_maps)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestModuleDoc {
    pub object: usize,
    pub module: ModuleDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestModulesDoc {
    pub anomaly: AnomalyDoc,
    pub modules: Vec<TestModuleDoc>,
}

impl TestModulesDoc {
    pub fn from_modules(j: &AnomalyFunctor, modules: &[(usize, QBimodule)]) -> Self {
        TestModulesDoc {
            anomaly: AnomalyDoc::from_anomaly(j),
            modules: modules.iter().map(|(x, m)| TestModuleDoc { object: *x, module: ModuleDoc::from_bimodule(m) }).collect(),
        }
    }

    pub fn to_modules(&self) -> CliResult<(AnomalyFunctor, Vec<(usize, QBimodule)>)> {
        let j = self.anomaly.to_anomaly()?;
        let k = ground();
        let mut out = Vec::with_capacity(self.modules.len());
        for t in &self.modules {
            if t.object >= j.category().num_objects() {
                return Err(CliError::schema(format!("test module object {} out of range", t.object)));
            }
            out.push((t.object, t.module.to_bimodule(&k, j.algebra(t.object))?));
        }
        Ok((j, out))
    }
}
