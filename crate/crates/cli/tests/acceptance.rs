//! Acceptance criteria, one line per criterion. Run with
//! `cargo test -p morita-lab --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use morita_core::algebra::Algebra;
use morita_core::bimodule::{hom_bimodule_space, Bimodule};
use morita_core::category::FinCategory;
use morita_core::cocycle::{coboundary, trivialize, Cochain1, Cocycle2};
use morita_core::extension::{default_test_modules, proj_via_st, restrict_to_st, verify_triangle, z_from_f};
use morita_core::group::GroupTable;
use morita_core::reps::{cocycle_of, eta_beta, linear_lift, proj_from_anomalous, tensor_projective, ProjectiveRep};
use morita_core::tensor::{
    associator, column_module, invertibility_check, pentagon_holds, row_module, tensor_over, triangle_holds, unitor_left, unitor_right,
};
use morita_core::twisted::{consistency_check, module_to_proj, proj_to_module, twisted_group_algebra};
use morita_core::{frac, inverse, kernel_basis, q, Matrix, QAlgebra, QBimodule, QMatrix, Rational};
use morita_lab::manifest::{AlphaStructureDoc, AnomalousRepDoc, ProjectiveRepDoc, StRepDoc};
use morita_lab::{Kind, Manifest};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn delooping(g: &GroupTable) -> Arc<FinCategory> {
    Arc::new(FinCategory::delooping(g))
}

fn quaternion() -> (GroupTable, Cocycle2) {
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

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(1..=6i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    frac(n, rng.gen_range(1..=5))
}

fn random_cochain(rng: &mut ChaCha8Rng, g: &GroupTable) -> Cochain1 {
    Cochain1::new(delooping(g), (0..g.order()).map(|_| random_nonzero(rng)).collect()).expect("nonzero values")
}

/// `a(g,h) = b(g) b(h) / b(gh)`, written out independently of the library.
fn coboundary_table(g: &GroupTable, b: &[Rational]) -> Vec<Vec<Rational>> {
    (0..g.order()).map(|x| (0..g.order()).map(|y| &b[x] * &b[y] / &b[g.mul(x, y)]).collect()).collect()
}

fn cocycle_identity_holds(g: &GroupTable, t: &[Vec<Rational>]) -> bool {
    let n = g.order();
    (0..n).all(|h| (0..n).all(|x| (0..n).all(|f| &t[h][x] * &t[g.mul(h, x)][f] == &t[h][g.mul(x, f)] * &t[x][f])))
}

fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for r in 0..n {
        for c in 0..r {
            l[(r, c)] = q(rng.gen_range(-2..=2));
            u[(c, r)] = q(rng.gen_range(-2..=2));
        }
    }
    l.mul(&u)
}

fn permutation_rep(g: &GroupTable, a: usize) -> QMatrix {
    let n = g.order();
    let mut m = Matrix::zeros(n, n);
    for b in 0..n {
        m[(g.mul(a, b), b)] = q(1);
    }
    m
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let groups = [GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::cyclic(4), GroupTable::klein_four(), GroupTable::symmetric3()];
    let (mut cocycles, mut others) = (0, 0);
    for g in &groups {
        let n = g.order();
        for trial in 0..200 {
            let b: Vec<Rational> = (0..n).map(|_| random_nonzero(&mut rng)).collect();
            let mut table = coboundary_table(g, &b);
            if trial % 2 == 1 {
                let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
                table[x][y] = &table[x][y] * random_nonzero(&mut rng);
            }
            let (is_cocycle, is_assoc) = consistency_check(g, &table).map_err(|e| e.to_string())?;
            ensure(is_cocycle == is_assoc, || format!("flags disagree on a table over a group of order {n}"))?;
            ensure(is_cocycle == cocycle_identity_holds(g, &table), || "cocycle flag differs from the direct triple check".into())?;
            if is_cocycle {
                cocycles += 1;
            } else {
                others += 1;
            }
        }
    }
    ensure(cocycles > 0 && others > 0, || format!("sample not mixed: {cocycles} cocycles, {others} others"))
}

fn criterion_2() -> Outcome {
    let (g, alpha) = quaternion();
    let t = twisted_group_algebra(&g, &alpha).map_err(|e| e.to_string())?;
    let a = t.algebra();
    ensure(t.dim() == 4, || format!("dimension {}", t.dim()))?;
    // Center: kernel of the stacked commutator maps [e_i, -].
    let mut eqs = Matrix::zeros(0, 4);
    for i in 0..4 {
        let mut m = Matrix::zeros(4, 4);
        for j in 0..4 {
            let (l, r) = (a.mul_basis(i, j), a.mul_basis(j, i));
            for k in 0..4 {
                m[(k, j)] = &l[k] - &r[k];
            }
        }
        eqs = eqs.vstack(&m);
    }
    let center = kernel_basis(&eqs);
    ensure(center.len() == 1, || format!("center has dimension {}", center.len()))?;
    for i in 0..4 {
        for j in 0..4 {
            ensure(a.mul_basis(i, j).iter().any(|x| !x.is_zero()), || format!("e{i} e{j} = 0"))?;
        }
    }
    // Norm certificate: with conj = diag(1,-1,-1,-1), e_i conj(e_j) + e_j conj(e_i)
    // is 2 delta_ij 1, so z conj(z) = |z|^2 1 and every nonzero z is a unit.
    let conj = Matrix::diagonal(&[q(1), q(-1), q(-1), q(-1)]);
    for i in 0..4 {
        for j in 0..4 {
            let (ei, ej) = (a.basis(i), a.basis(j));
            let s: Vec<Rational> = a.mul(&ei, &conj.apply(&ej)).iter().zip(a.mul(&ej, &conj.apply(&ei))).map(|(x, y)| x + y).collect();
            let expect: Vec<Rational> = a.unit().iter().map(|u| if i == j { u * q(2) } else { q(0) }).collect();
            ensure(s == expect, || format!("norm certificate fails at ({i}, {j})"))?;
        }
    }
    // Exhaustive search over a grid confirms the only idempotents are 0 and 1.
    let grid = [q(-1), frac(-1, 2), q(0), frac(1, 2), q(1)];
    for w in &grid {
        for x in &grid {
            for y in &grid {
                for z in &grid {
                    let v = vec![w.clone(), x.clone(), y.clone(), z.clone()];
                    let trivial = v.iter().all(Zero::is_zero) || v == a.unit();
                    ensure(trivial || a.mul(&v, &v) != v, || format!("nontrivial idempotent {v:?}"))?;
                }
            }
        }
    }
    ensure((0..4).all(|i| inverse(&a.left_mult(i)).is_some()), || "basis element is a zero divisor".into())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in [GroupTable::cyclic(3), GroupTable::klein_four()] {
        for _ in 0..100 {
            let beta = random_cochain(&mut rng, &g);
            let table = coboundary_table(&g, beta.values());
            let alpha = Cocycle2::from_fn(delooping(&g), |x, y| table[x][y].clone());
            let found = trivialize(&alpha).map_err(|e| e.to_string())?.ok_or("coboundary reported nontrivial")?;
            ensure(coboundary(&found) == alpha, || "coboundary(beta) differs from alpha".into())?;
        }
    }
    let (g, alpha) = quaternion();
    ensure(trivialize(&alpha).map_err(|e| e.to_string())?.is_none(), || "quaternion cocycle trivialized".into())?;
    // Oracle: no sign-valued cochain trivializes it. For a sign-valued cocycle
    // on an exponent-2 group a rational trivialization rescales to one, since
    // a(g,g) = b(g)^2 / b(e) pins |b(g)| to |b(e)|^(1/2).
    let n = g.order();
    let hits = (0..1u32 << n)
        .filter(|mask| {
            let b: Vec<Rational> = (0..n).map(|i| if mask >> i & 1 == 1 { q(-1) } else { q(1) }).collect();
            let t = coboundary_table(&g, &b);
            (0..n).all(|x| (0..n).all(|y| &t[x][y] == alpha.value(x, y)))
        })
        .count();
    ensure(hits == 0, || format!("{hits} sign cochains trivialize the quaternion cocycle"))
}

struct Loaded {
    f: morita_core::extension::STRep,
    xi: morita_core::reps::AlphaStructure,
    z: morita_core::reps::AnomalousRep,
    rho: ProjectiveRep,
}

fn load(prefix: &str) -> Result<Loaded, String> {
    let dir = fixtures();
    let read = |name: &str| Manifest::read(&dir.join(format!("{prefix}_{name}.json"))).map_err(|e| e.to_string());
    let err = |e: morita_lab::CliError| e.to_string();
    Ok(Loaded {
        f: read("st_rep")?.payload::<StRepDoc>(Kind::StRep).map_err(err)?.to_rep().map_err(err)?,
        xi: read("alpha_structure")?.payload::<AlphaStructureDoc>(Kind::AlphaStructure).map_err(err)?.to_structure().map_err(err)?,
        z: read("anomalous_rep")?.payload::<AnomalousRepDoc>(Kind::AnomalousRep).map_err(err)?.to_rep().map_err(err)?,
        rho: read("projective_rep")?.payload::<ProjectiveRepDoc>(Kind::ProjectiveRep).map_err(err)?.to_rep().map_err(err)?,
    })
}

fn criterion_4() -> Outcome {
    for prefix in ["trivial", "quaternion"] {
        let l = load(prefix)?;
        let z = z_from_f(&l.f).map_err(|e| e.to_string())?;
        ensure(restrict_to_st(&z).map_err(|e| e.to_string())? == l.f, || format!("{prefix}: restrict_to_st . z_from_f != id"))?;
        let back = z_from_f(&restrict_to_st(&l.z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(back == l.z, || format!("{prefix}: z_from_f . restrict_to_st != id"))?;
        let modules = default_test_modules(l.f.anomaly());
        ensure(modules.len() == 3, || "expected regular, zero and doubled modules per object".into())?;
        let found = verify_triangle(&l.f, None, &modules);
        ensure(found.is_empty(), || format!("{prefix}: {}", found[0]))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for prefix in ["trivial", "quaternion"] {
        let l = load(prefix)?;
        let via = proj_via_st(&l.f, &l.xi).map_err(|e| e.to_string())?;
        let direct = proj_from_anomalous(&z_from_f(&l.f).map_err(|e| e.to_string())?, &l.xi).map_err(|e| e.to_string())?;
        ensure(via.dims() == direct.dims(), || format!("{prefix}: dims differ"))?;
        ensure(via.matrices() == direct.matrices(), || format!("{prefix}: matrices differ"))?;
        ensure(via.scalars() == direct.scalars(), || format!("{prefix}: scalars differ"))?;
        ensure(via == l.rho, || format!("{prefix}: result differs from the shipped projective rep"))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let (g, alpha) = quaternion();
    let t = twisted_group_algebra(&g, &alpha).map_err(|e| e.to_string())?;
    let rho = load("quaternion")?.rho;
    let m = proj_to_module(&t, &rho).map_err(|e| e.to_string())?;
    ensure(m.left_action() == Bimodule::left_regular(t.algebra()).left_action(), || "not the regular module".into())?;
    ensure(module_to_proj(&t, &m).map_err(|e| e.to_string())? == rho, || "quaternion roundtrip".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let k = Arc::new(Algebra::ground());
    for _ in 0..50 {
        let (g, base): (GroupTable, Option<Cocycle2>) = match rng.gen_range(0..4) {
            0 => (GroupTable::cyclic(2), None),
            1 => (GroupTable::cyclic(3), None),
            2 => (GroupTable::symmetric3(), None),
            _ => (GroupTable::klein_four(), Some(quaternion().1)),
        };
        let beta = random_cochain(&mut rng, &g);
        let twist = coboundary(&beta);
        let alpha = match &base {
            Some(b) => b.multiply(&twist).map_err(|e| e.to_string())?,
            None => twist,
        };
        let t = twisted_group_algebra(&g, &alpha).map_err(|e| e.to_string())?;
        let n = g.order();
        // Pieces: the regular module, and for a coboundary the characters
        // x_g -> beta(g) chi(g) with chi = 1 or the sign when it exists.
        let mut pieces: Vec<QBimodule> = vec![Bimodule::left_regular(t.algebra())];
        if base.is_none() {
            let sign = |a: usize| if is_odd(&g, a) { q(-1) } else { q(1) };
            let trivial: Vec<QMatrix> = (0..n).map(|a| Matrix::from_vec(1, 1, vec![beta.value(a).clone()])).collect();
            let signed: Vec<QMatrix> = (0..n).map(|a| Matrix::from_vec(1, 1, vec![beta.value(a) * sign(a)])).collect();
            pieces.push(Bimodule::left_module(t.algebra(), 1, trivial).map_err(|e| e.to_string())?);
            pieces.push(Bimodule::left_module(t.algebra(), 1, signed).map_err(|e| e.to_string())?);
        }
        let mut module = Bimodule::zero(t.algebra(), &k);
        for _ in 0..6 {
            let p = pieces.choose(&mut rng).expect("pieces").clone();
            if module.dim() + p.dim() <= 6 {
                module = module.direct_sum(&p).map_err(|e| e.to_string())?;
            }
        }
        let module = module.conjugate(&unimodular(&mut rng, module.dim())).map_err(|e| e.to_string())?;
        ensure(module.validate().is_empty(), || "generated module is invalid".into())?;
        let rho = module_to_proj(&t, &module).map_err(|e| e.to_string())?;
        ensure(rho.validate().is_empty(), || "module_to_proj gave an invalid rep".into())?;
        ensure(proj_to_module(&t, &rho).map_err(|e| e.to_string())? == module, || "module roundtrip".into())?;
        ensure(module_to_proj(&t, &proj_to_module(&t, &rho).map_err(|e| e.to_string())?).map_err(|e| e.to_string())? == rho, || {
            "rep roundtrip".into()
        })?;
    }
    Ok(())
}

/// Whether `a` lies outside the subgroup generated by squares and
/// commutators, when that subgroup has index 2.
fn is_odd(g: &GroupTable, a: usize) -> bool {
    let n = g.order();
    let mut sub = vec![false; n];
    for x in 0..n {
        sub[g.mul(x, x)] = true;
        for y in 0..n {
            let c = g.mul(g.mul(x, y), g.mul(g.inverse(x), g.inverse(y)));
            sub[c] = true;
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            for y in 0..n {
                if sub[x] && sub[y] && !sub[g.mul(x, y)] {
                    sub[g.mul(x, y)] = true;
                    changed = true;
                }
            }
        }
    }
    let size = sub.iter().filter(|&&s| s).count();
    size * 2 == n && !sub[a]
}

fn one_dim(g: &GroupTable, values: &[Rational]) -> Result<ProjectiveRep, String> {
    let table = coboundary_table(g, values);
    let scalars = Cocycle2::from_fn(delooping(g), |x, y| table[x][y].clone());
    let mats = values.iter().map(|v| Matrix::from_vec(1, 1, vec![v.clone()])).collect();
    ProjectiveRep::new(delooping(g), vec![1], mats, scalars).map_err(|e| e.to_string())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let groups = [GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::klein_four(), GroupTable::symmetric3()];
    for _ in 0..100 {
        let g = groups.choose(&mut rng).expect("groups");
        let a: Vec<Rational> = (0..g.order()).map(|_| random_nonzero(&mut rng)).collect();
        let b: Vec<Rational> = (0..g.order()).map(|_| random_nonzero(&mut rng)).collect();
        let (r1, r2) = (one_dim(g, &a)?, one_dim(g, &b)?);
        let both = tensor_projective(&r1, &r2).map_err(|e| e.to_string())?;
        let product = cocycle_of(&r1).map_err(|e| e.to_string())?.multiply(&cocycle_of(&r2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(cocycle_of(&both).map_err(|e| e.to_string())? == product, || "class of the tensor product".into())?;
        ensure(both.scalars() == &product, || "tensor product carries the wrong scalars".into())?;
    }
    for _ in 0..50 {
        let g = groups.choose(&mut rng).expect("groups");
        let n = g.order();
        let p = unimodular(&mut rng, n);
        let p_inv = inverse(&p).expect("unimodular");
        let linear: Vec<QMatrix> = (0..n).map(|a| p.mul(&permutation_rep(g, a)).mul(&p_inv)).collect();
        let beta = random_cochain(&mut rng, g);
        let mats = linear.iter().zip(beta.values()).map(|(m, b)| m.scale(b)).collect();
        let rho = ProjectiveRep::new(delooping(g), vec![n], mats, coboundary(&beta)).map_err(|e| e.to_string())?;
        ensure(rho.validate().is_empty(), || "twisted rep is invalid".into())?;
        let lifted = linear_lift(&rho, &beta).map_err(|e| e.to_string())?;
        let via_eta = tensor_projective(&eta_beta(&beta).map_err(|e| e.to_string())?, &rho).map_err(|e| e.to_string())?;
        ensure(lifted == via_eta, || "linear_lift differs from eta_beta (x) rho".into())?;
        ensure(lifted.matrices() == linear.as_slice(), || "lift is not the original linear rep".into())?;
    }
    Ok(())
}

/// Small algebras with their one-dimensional characters.
fn algebras() -> Vec<(Arc<QAlgebra>, Vec<Vec<Rational>>)> {
    let k = Algebra::ground();
    vec![
        (Arc::new(k.clone()), vec![vec![q(1)]]),
        (Arc::new(Algebra::product(&k, &k)), vec![vec![q(1), q(0)], vec![q(0), q(1)]]),
        (Arc::new(Algebra::truncated_polynomials(2)), vec![vec![q(1), q(0)]]),
        (Arc::new(Algebra::upper_triangular2()), vec![vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)]]),
        (Arc::new(Algebra::group_algebra(&GroupTable::cyclic(2))), vec![vec![q(1), q(1)], vec![q(1), q(-1)]]),
        (Arc::new(Algebra::matrix_algebra(2)), vec![]),
    ]
}

/// Left modules (as action lists) of dimension at most 3.
fn left_pieces(a: &Arc<QAlgebra>, chars: &[Vec<Rational>]) -> Vec<Vec<QMatrix>> {
    let mut out: Vec<Vec<QMatrix>> = chars.iter().map(|c| c.iter().map(|v| Matrix::from_vec(1, 1, vec![v.clone()])).collect()).collect();
    if a.dim() <= 3 {
        out.push((0..a.dim()).map(|i| a.left_mult(i)).collect());
    }
    if a.dim() == 4 && chars.is_empty() {
        out.push(column_module(a, 2).expect("column").left_action().to_vec());
    }
    out
}

fn right_pieces(a: &Arc<QAlgebra>, chars: &[Vec<Rational>]) -> Vec<Vec<QMatrix>> {
    let mut out: Vec<Vec<QMatrix>> = chars.iter().map(|c| c.iter().map(|v| Matrix::from_vec(1, 1, vec![v.clone()])).collect()).collect();
    if a.dim() <= 3 {
        out.push((0..a.dim()).map(|i| a.right_mult(i)).collect());
    }
    if a.dim() == 4 && chars.is_empty() {
        out.push(row_module(a, 2).expect("row").right_action().to_vec());
    }
    out
}

/// A random `(A, B)`-bimodule of dimension 1..=3: a sum of external tensor
/// products of small left and right modules, in a random basis.
fn random_bimodule(
    rng: &mut ChaCha8Rng,
    (a, ca): &(Arc<QAlgebra>, Vec<Vec<Rational>>),
    (b, cb): &(Arc<QAlgebra>, Vec<Vec<Rational>>),
) -> Option<QBimodule> {
    let mut options = Vec::new();
    for l in left_pieces(a, ca) {
        for r in right_pieces(b, cb) {
            let (u, v) = (l[0].rows(), r[0].rows());
            if u * v <= 3 {
                let left = l.iter().map(|m| m.kron(&Matrix::identity(v))).collect();
                let right = r.iter().map(|m| Matrix::identity(u).kron(m)).collect();
                options.push(Bimodule::new(a.clone(), b.clone(), u * v, left, right).expect("shapes"));
            }
        }
    }
    let mut m = options.choose(rng)?.clone();
    if let Some(extra) = options.choose(rng) {
        if m.dim() + extra.dim() <= 3 && rng.gen_bool(0.5) {
            m = m.direct_sum(extra).expect("same algebras");
        }
    }
    let p = unimodular(rng, m.dim());
    Some(m.conjugate(&p).expect("invertible"))
}

fn random_chain(rng: &mut ChaCha8Rng, len: usize) -> Vec<QBimodule> {
    let algs = algebras();
    loop {
        let picks: Vec<_> = (0..=len).map(|_| algs.choose(rng).expect("algebras").clone()).collect();
        let chain: Option<Vec<_>> = picks.windows(2).map(|w| random_bimodule(rng, &w[0], &w[1])).collect();
        if let Some(c) = chain {
            return c;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let err = |e: morita_core::Error| e.to_string();
    for _ in 0..100 {
        let c = random_chain(&mut rng, 4);
        for m in &c {
            ensure(m.validate().is_empty(), || "generated bimodule is invalid".into())?;
            for u in [unitor_left(m).map_err(err)?, unitor_right(m).map_err(err)?] {
                ensure(u.validate().is_empty() && u.is_isomorphism(), || "unitor is not a bimodule isomorphism".into())?;
            }
        }
        let assoc = associator(&c[0], &c[1], &c[2]).map_err(err)?;
        ensure(assoc.validate().is_empty() && assoc.is_isomorphism(), || "associator is not a bimodule isomorphism".into())?;
        ensure(pentagon_holds(&c[0], &c[1], &c[2], &c[3]).map_err(err)?, || "pentagon fails".into())?;
        ensure(triangle_holds(&c[0], &c[1]).map_err(err)?, || "triangle fails".into())?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let err = |e: morita_core::Error| e.to_string();
    let m2: Arc<QAlgebra> = Arc::new(Algebra::matrix_algebra(2));
    let row = row_module(&m2, 2).map_err(err)?;
    let col = column_module(&m2, 2).map_err(err)?;
    let rc = tensor_over(&row, &col).map_err(err)?;
    ensure(rc.product.dim() == 1, || format!("Row (x) Col has dimension {}", rc.product.dim()))?;
    let cr = tensor_over(&col, &row).map_err(err)?;
    ensure(cr.product.dim() == 4, || format!("Col (x) Row has dimension {}", cr.product.dim()))?;
    let homs = hom_bimodule_space(&cr.product, &Bimodule::regular(&m2)).map_err(err)?;
    ensure(homs.iter().any(|h| inverse(h).is_some()), || "no bimodule isomorphism Col (x) Row -> M2".into())?;
    ensure(invertibility_check(&cr.product).map_err(err)?.is_some(), || "Col (x) Row is not invertible".into())?;
    ensure(invertibility_check(&col).map_err(err)?.is_some(), || "Col is not invertible".into())
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_morita-lab"))
        .args(args)
        .current_dir(fixtures())
        .env("MORITA_LAB_COLOR", "0")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10() -> Outcome {
    let pipelines: Vec<(Vec<&str>, i32)> = vec![
        (vec!["validate", "group_z2.json", "group_z3.json", "group_v4.json", "group_s3.json"], 0),
        (vec!["validate", "--jobs", "4", "quaternion_anomaly.json", "quaternion_st_rep.json", "trivial_anomalous_rep.json"], 0),
        (vec!["twist", "group_v4.json", "cocycle_v4_quaternion.json"], 0),
        (vec!["trivialize", "cocycle_z2_square.json"], 0),
        (vec!["trivialize", "cocycle_v4_quaternion.json"], 0),
        (
            vec![
                "roundtrip",
                "quaternion_anomaly.json",
                "quaternion_st_rep.json",
                "--alpha-structure",
                "quaternion_alpha_structure.json",
                "--test-modules",
                "quaternion_test_modules.json",
            ],
            0,
        ),
        (vec!["roundtrip", "trivial_anomaly.json", "trivial_anomalous_rep.json", "--alpha-structure", "trivial_alpha_structure.json"], 0),
        (vec!["kan", "group_v4.json", "cocycle_v4_quaternion.json", "kan_projective.json"], 0),
        (vec!["--format", "json", "validate", "fault_cocycle_z3_broken.json"], 1),
        (vec!["validate", "fault_malformed.json"], 2),
        (vec!["validate", "fault_schema_version.json"], 2),
        (vec!["twist", "group_z3.json", "fault_cocycle_z3_broken.json"], 1),
        (vec!["roundtrip", "quaternion_anomaly.json", "fault_quaternion_anomalous_rep_corrupt.json"], 1),
        (vec!["kan", "group_v4.json", "cocycle_v4_quaternion.json", "fault_kan_broken.json"], 1),
    ];
    for (args, expected) in pipelines {
        let (c1, o1) = run_cli(&args);
        let (c2, o2) = run_cli(&args);
        ensure(o1 == o2, || format!("{args:?}: reports differ between runs"))?;
        ensure(c1 == expected && c2 == expected, || format!("{args:?}: exit {c1}, expected {expected}"))?;
    }
    let (_, report) = run_cli(&["validate", "fault_cocycle_z3_broken.json"]);
    let text = String::from_utf8_lossy(&report);
    ensure(text.contains("(g1, g1, g2)"), || "broken triple is not named".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cocycle flags agree with associativity", criterion_1, Duration::from_secs(5)),
        ("quaternion algebra fixture", criterion_2, Duration::from_secs(1)),
        ("trivialization soundness and completeness", criterion_3, Duration::from_secs(5)),
        ("triangle identities", criterion_4, Duration::from_secs(10)),
        ("two ways to a projective representation", criterion_5, Duration::from_secs(5)),
        ("projective reps and twisted modules", criterion_6, Duration::from_secs(5)),
        ("tensor products and class law", criterion_7, Duration::from_secs(5)),
        ("relative tensor coherence", criterion_8, Duration::from_secs(30)),
        ("Morita smoke test", criterion_9, Duration::from_secs(1)),
        ("CLI determinism and exit codes", criterion_10, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(()) if elapsed <= *limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (took longer than {} ms)", limit.as_millis()),
            Err(e) => format!("FAIL ({e})"),
        };
        if outcome != "PASS" {
            failed += 1;
        }
        println!("criterion {:>2}: {outcome} {name} [tolerance exact, {} ms]", i + 1, elapsed.as_millis());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
