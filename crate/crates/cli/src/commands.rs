//! Subcommand implementations. Each returns a [`Run`]: the report and the
//! exit code (0 success, 1 semantic failure, 2 I/O or parse failure).

use std::path::{Path, PathBuf};

use morita_core::anomaly::AnomalyFunctor;
use morita_core::category::FinCategory;
use morita_core::cocycle::{coboundary, trivialize, Cocycle2};
use morita_core::extension::{default_test_modules, restrict_to_st, verify_triangle, z_from_f, STRep};
use morita_core::format_rational;
use morita_core::group::GroupTable;
use morita_core::reps::AlphaStructure;
use morita_core::twisted::{kan_factorization, module_to_proj, twisted_group_algebra};
use morita_core::QBimodule;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::manifest::*;
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub report: Report,
    pub code: i32,
}

impl Run {
    fn from_report(report: Report) -> Self {
        let code = if report.ok() { 0 } else { 1 };
        Run { report, code }
    }

    /// A report holding a single failure for `err`.
    pub fn error(command: &str, location: &str, err: &CliError) -> Self {
        let mut report = Report::new(command);
        let name = if err.exit_code() == 2 { "manifest.parse" } else { "manifest.construct" };
        report.fail(name, location, err.to_string());
        Run { report, code: err.exit_code() }
    }
}

fn show(p: &Path) -> String {
    p.display().to_string()
}

fn load<T: serde::de::DeserializeOwned>(path: &Path, kind: Kind) -> CliResult<T> {
    Manifest::read(path)?.payload(kind)
}

/// Runs the validator matching the manifest's kind.
pub fn validate_manifest(m: &Manifest, location: &str) -> CliResult<Report> {
    let mut r = Report::new("validate");
    match m.kind {
        Kind::Group => {
            let g = m.payload::<GroupDoc>(Kind::Group)?.to_group()?;
            r.pass("group.axioms", location, format!("order {}", g.order()));
        }
        Kind::Category => {
            let c = m.payload::<CategoryDoc>(Kind::Category)?.to_category()?;
            r.findings("category.valid", location, &c.validate());
        }
        Kind::Cocycle => {
            let doc: CocycleDoc = m.payload(Kind::Cocycle)?;
            let c = doc.base.to_category()?;
            let found = c.validate();
            r.findings("category.valid", location, &found);
            if found.is_empty() {
                r.findings("cocycle.valid", location, &doc.to_cocycle()?.validate());
            }
        }
        Kind::Algebra => {
            let a = m.payload::<AlgebraDoc>(Kind::Algebra)?.to_algebra()?;
            r.findings("algebra.valid", location, &a.validate());
        }
        Kind::Bimodule => {
            let b = m.payload::<BimoduleDoc>(Kind::Bimodule)?.to_bimodule()?;
            r.findings("algebra.valid", &format!("{location}: left"), &b.left_algebra().validate());
            r.findings("algebra.valid", &format!("{location}: right"), &b.right_algebra().validate());
            r.findings("bimodule.valid", location, &b.validate());
        }
        Kind::Anomaly => {
            let j = m.payload::<AnomalyDoc>(Kind::Anomaly)?.to_anomaly()?;
            r.findings("anomaly.valid", location, &j.validate());
        }
        Kind::AlphaStructure => {
            let xi = m.payload::<AlphaStructureDoc>(Kind::AlphaStructure)?.to_structure()?;
            r.findings("anomaly.valid", location, &xi.anomaly().validate());
            r.findings("alpha_structure.valid", location, &xi.validate());
        }
        Kind::AnomalousRep => {
            let z = m.payload::<AnomalousRepDoc>(Kind::AnomalousRep)?.to_rep()?;
            r.findings("anomaly.valid", location, &z.anomaly().validate());
            r.findings("anomalous_rep.valid", location, &z.validate());
        }
        Kind::ProjectiveRep => {
            let rho = m.payload::<ProjectiveRepDoc>(Kind::ProjectiveRep)?.to_rep()?;
            r.findings("category.valid", location, &rho.category().validate());
            r.findings("projective_rep.valid", location, &rho.validate());
        }
        Kind::StRep => {
            let f = m.payload::<StRepDoc>(Kind::StRep)?.to_rep()?;
            r.findings("anomaly.valid", location, &f.anomaly().validate());
            r.findings("st_rep.valid", location, &f.validate());
            r.findings("st_rep.scalars", location, &f.check_scalars());
        }
        Kind::KanCandidate => {
            let c = m.payload::<KanCandidateDoc>(Kind::KanCandidate)?.to_candidate()?;
            r.findings("algebra.valid", location, &c.algebra_b.validate());
            r.findings("bimodule.valid", location, &c.module_n.validate());
        }
        Kind::TestModules => {
            let (j, mods) = m.payload::<TestModulesDoc>(Kind::TestModules)?.to_modules()?;
            r.findings("anomaly.valid", location, &j.validate());
            for (k, (_, module)) in mods.iter().enumerate() {
                r.findings("test_module.valid", &format!("{location}: module #{k}"), &module.validate());
            }
        }
    }
    Ok(r)
}

fn validate_path(path: &Path) -> Run {
    let loc = show(path);
    match Manifest::read(path).and_then(|m| validate_manifest(&m, &loc)) {
        Ok(r) => Run::from_report(r),
        Err(e) => Run::error("validate", &loc, &e),
    }
}

/// Validates each manifest, `jobs` at a time; the report is ordered by path.
pub fn cmd_validate(paths: &[PathBuf], jobs: Option<usize>) -> Run {
    let mut sorted = paths.to_vec();
    sorted.sort();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let runs: Vec<Run> = match builder.build() {
        Ok(pool) => pool.install(|| sorted.par_iter().map(|p| validate_path(p)).collect()),
        Err(_) => sorted.iter().map(|p| validate_path(p)).collect(),
    };
    let mut report = Report::new("validate");
    let code = runs.iter().map(|r| r.code).max().unwrap_or(0);
    for r in runs {
        report.extend(r.report);
    }
    Run { report, code }
}

fn group_and_cocycle(group: &Path, cocycle: &Path) -> CliResult<(GroupTable, Cocycle2)> {
    let g = load::<GroupDoc>(group, Kind::Group)?.to_group()?;
    let alpha = load::<CocycleDoc>(cocycle, Kind::Cocycle)?.to_cocycle()?;
    Ok((g, alpha))
}

fn same_base(r: &mut Report, g: &GroupTable, alpha: &Cocycle2, location: &str) -> bool {
    if **alpha.category() == FinCategory::delooping(g) {
        true
    } else {
        r.fail("cocycle.base", location, "cocycle does not live on the delooping of the group");
        false
    }
}

/// Writes `manifest`, reads it back and validates the copy.
fn write_and_revalidate(r: &mut Report, name: &str, manifest: &Manifest, out: &Path) -> CliResult<()> {
    manifest.write(out)?;
    let back = Manifest::read(out)?;
    if &back != manifest {
        r.fail(name, show(out), "written manifest differs after reading it back");
        return Ok(());
    }
    let check = validate_manifest(&back, &show(out))?;
    if check.ok() {
        r.pass(name, show(out), "");
    } else {
        r.extend(check);
    }
    Ok(())
}

/// Builds `K^a[G]` and writes it to `out` as an algebra manifest.
pub fn cmd_twist(group: &Path, cocycle: &Path, out: Option<&Path>) -> Run {
    let go = || -> CliResult<Report> {
        let mut r = Report::new("twist");
        let (g, alpha) = group_and_cocycle(group, cocycle)?;
        let loc = show(cocycle);
        if !same_base(&mut r, &g, &alpha, &loc) {
            return Ok(r);
        }
        let found = alpha.validate();
        r.findings("cocycle.valid", &loc, &found);
        if !found.is_empty() {
            return Ok(r);
        }
        let t = twisted_group_algebra(&g, &alpha)?;
        r.findings("twist.algebra", &loc, &t.algebra().validate());
        r.outcome("dim", t.dim().to_string());
        r.outcome("center_dim", t.algebra().center().len().to_string());
        let manifest = Manifest::new(Kind::Algebra, &AlgebraDoc::from_algebra(t.algebra()));
        match out {
            Some(out) => write_and_revalidate(&mut r, "twist.revalidate", &manifest, out)?,
            None => r.outcome("algebra", serde_json::to_string(&manifest).expect("manifest serializes")),
        }
        Ok(r)
    };
    go().map(Run::from_report).unwrap_or_else(|e| Run::error("twist", &show(cocycle), &e))
}

/// Prints a trivializing cochain or reports a nontrivial class.
pub fn cmd_trivialize(cocycle: &Path) -> Run {
    let go = || -> CliResult<Report> {
        let mut r = Report::new("trivialize");
        let alpha = load::<CocycleDoc>(cocycle, Kind::Cocycle)?.to_cocycle()?;
        let loc = show(cocycle);
        let found = alpha.validate();
        r.findings("cocycle.valid", &loc, &found);
        if !found.is_empty() {
            return Ok(r);
        }
        match trivialize(&alpha)? {
            Some(beta) => {
                if coboundary(&beta) == alpha {
                    r.pass("trivialize.verified", &loc, "coboundary(beta) = alpha");
                } else {
                    r.fail("trivialize.verified", &loc, "coboundary(beta) differs from alpha");
                }
                let c = alpha.category();
                let values: Vec<String> =
                    beta.values().iter().enumerate().map(|(f, v)| format!("{}={}", c.label(f), format_rational(v))).collect();
                r.outcome("class", "trivial");
                r.outcome("beta", values.join(", "));
            }
            None => {
                r.pass("trivialize.solver", &loc, "no integer solution");
                r.outcome("class", "nontrivial class");
            }
        }
        Ok(r)
    };
    go().map(Run::from_report).unwrap_or_else(|e| Run::error("trivialize", &show(cocycle), &e))
}

fn same_anomaly(r: &mut Report, j: &AnomalyFunctor, other: &AnomalyFunctor, location: &str) -> bool {
    if j == other {
        true
    } else {
        r.fail("roundtrip.anomaly", location, "embedded anomaly differs from the given anomaly");
        false
    }
}

/// Inputs of [`cmd_roundtrip`].
#[derive(Clone, Debug, Default)]
pub struct RoundtripInputs {
    pub anomaly: PathBuf,
    pub rep: PathBuf,
    pub alpha_structure: Option<PathBuf>,
    pub test_modules: Option<PathBuf>,
}

/// Checks both triangles of equivalences and, with an alpha-structure, the
/// agreement of the two ways of producing a projective representation.
pub fn cmd_roundtrip(inputs: &RoundtripInputs) -> Run {
    let go = || -> CliResult<Report> {
        let mut r = Report::new("roundtrip");
        let j = load::<AnomalyDoc>(&inputs.anomaly, Kind::Anomaly)?.to_anomaly()?;
        let found = j.validate();
        r.findings("anomaly.valid", &show(&inputs.anomaly), &found);
        if !found.is_empty() {
            return Ok(r);
        }
        let rep_loc = show(&inputs.rep);
        let rep = Manifest::read(&inputs.rep)?;
        let f: STRep = match rep.kind {
            Kind::StRep => {
                let f = rep.payload::<StRepDoc>(Kind::StRep)?.to_rep()?;
                if !same_anomaly(&mut r, &j, f.anomaly(), &rep_loc) {
                    return Ok(r);
                }
                f
            }
            Kind::AnomalousRep => {
                let z = rep.payload::<AnomalousRepDoc>(Kind::AnomalousRep)?.to_rep()?;
                if !same_anomaly(&mut r, &j, z.anomaly(), &rep_loc) {
                    return Ok(r);
                }
                let found = z.validate();
                r.findings("anomalous_rep.valid", &rep_loc, &found);
                if !found.is_empty() {
                    return Ok(r);
                }
                let f = restrict_to_st(&z)?;
                match z_from_f(&f) {
                    Ok(back) if back == z => r.pass("roundtrip.z_roundtrip", &rep_loc, ""),
                    Ok(_) => r.fail("roundtrip.z_roundtrip", &rep_loc, "z_from_f(restrict_to_st(Z)) != Z"),
                    Err(e) => r.fail("roundtrip.z_roundtrip", &rep_loc, e.to_string()),
                }
                f
            }
            other => return Err(CliError::schema(format!("expected st_rep or anomalous_rep, found {}", other.name()))),
        };
        let xi: Option<AlphaStructure> = match &inputs.alpha_structure {
            Some(p) => {
                let xi = load::<AlphaStructureDoc>(p, Kind::AlphaStructure)?.to_structure()?;
                if !same_anomaly(&mut r, &j, xi.anomaly(), &show(p)) {
                    return Ok(r);
                }
                let found = xi.validate();
                r.findings("alpha_structure.valid", &show(p), &found);
                if !found.is_empty() {
                    return Ok(r);
                }
                Some(xi)
            }
            None => None,
        };
        let modules: Vec<(usize, QBimodule)> = match &inputs.test_modules {
            Some(p) => {
                let (tj, mods) = load::<TestModulesDoc>(p, Kind::TestModules)?.to_modules()?;
                if !same_anomaly(&mut r, &j, &tj, &show(p)) {
                    return Ok(r);
                }
                mods
            }
            None => default_test_modules(&j),
        };
        r.outcome("test_modules", modules.len().to_string());
        let found = verify_triangle(&f, xi.as_ref(), &modules);
        if xi.is_some() {
            let differ = found.iter().any(|v| v.check == "triangle.projective");
            r.outcome("two_ways", if differ { "differ" } else { "equal" });
        }
        r.findings("roundtrip.triangle", &rep_loc, &found);
        Ok(r)
    };
    go().map(Run::from_report).unwrap_or_else(|e| Run::error("roundtrip", &show(&inputs.rep), &e))
}

/// Factors a candidate through `K^a[G]`, optionally writing the bimodule.
pub fn cmd_kan(group: &Path, cocycle: &Path, candidate: &Path, out: Option<&Path>) -> Run {
    let go = || -> CliResult<Report> {
        let mut r = Report::new("kan");
        let (g, alpha) = group_and_cocycle(group, cocycle)?;
        if !same_base(&mut r, &g, &alpha, &show(cocycle)) {
            return Ok(r);
        }
        let found = alpha.validate();
        r.findings("cocycle.valid", &show(cocycle), &found);
        if !found.is_empty() {
            return Ok(r);
        }
        let t = twisted_group_algebra(&g, &alpha)?;
        let cand = load::<KanCandidateDoc>(candidate, Kind::KanCandidate)?.to_candidate()?;
        let loc = show(candidate);
        let fact = kan_factorization(&cand, &t)?;
        r.findings("kan.factorization", &loc, &fact.findings);
        let Some(m) = fact.bimodule else { return Ok(r) };
        r.outcome("dim", m.dim().to_string());
        if cand.algebra_b.dim() == 1 {
            let rho = module_to_proj(&t, &m)?;
            r.findings("kan.projective_rep", &loc, &rho.validate());
        }
        if let Some(out) = out {
            let manifest = Manifest::new(Kind::Bimodule, &BimoduleDoc::from_bimodule(&m));
            write_and_revalidate(&mut r, "kan.revalidate", &manifest, out)?;
        }
        Ok(r)
    };
    go().map(Run::from_report).unwrap_or_else(|e| Run::error("kan", &show(candidate), &e))
}

/// Merges saved JSON reports, checking that each summary matches its checks.
pub fn cmd_report(paths: &[PathBuf]) -> Run {
    let mut sorted = paths.to_vec();
    sorted.sort();
    let mut out = Report::new("report");
    let mut code = 0;
    for p in &sorted {
        let loc = show(p);
        let parsed = std::fs::read_to_string(p)
            .map_err(|source| CliError::Io { path: p.clone(), source })
            .and_then(|s| serde_json::from_str::<Report>(&s).map_err(|source| CliError::Json { path: p.clone(), source }));
        match parsed {
            Ok(rep) => {
                if rep.is_consistent() {
                    out.pass("report.summary", &loc, format!("{}: passed {}, failed {}", rep.command, rep.summary.passed, rep.summary.failed));
                } else {
                    out.fail("report.summary", &loc, "summary does not match the checks");
                }
                for c in rep.checks.into_iter().filter(|c| c.status == crate::report::Status::Fail) {
                    out.fail(c.name, format!("{loc}: {}", c.location), c.detail);
                }
            }
            Err(e) => {
                out.fail("report.parse", &loc, e.to_string());
                code = 2;
            }
        }
    }
    if code == 0 && !out.ok() {
        code = 1;
    }
    Run { report: out, code }
}
