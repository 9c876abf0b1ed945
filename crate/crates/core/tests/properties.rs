use std::collections::BTreeSet;
use std::sync::Arc;

use morita_core::category::FinCategory;
use morita_core::cocycle::{coboundary, trivialize, Cochain1, Cocycle2};
use morita_core::group::GroupTable;
use morita_core::reps::ProjectiveRep;
use morita_core::twisted::{consistency_check, module_to_proj, proj_to_module, twisted_group_algebra};
use morita_core::{
    frac, inverse, kernel_basis, q, quotient_with_section, rank, smith_normal_form, solve_integer_system, solve_linear, IntMatrix,
    Matrix, QMatrix, Rational,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn det<T: Clone + num_traits::Num>(m: &Matrix<T>) -> T {
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    let mut total = T::zero();
    for c in 0..n {
        let entries = (1..n).flat_map(|r| (0..n).filter(|&k| k != c).map(move |k| m[(r, k)].clone())).collect();
        let minor = Matrix::from_vec(n - 1, n - 1, entries);
        let term = m[(0, c)].clone() * det(&minor);
        total = if c % 2 == 0 { total + term } else { total - term };
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
        s.push(last);
        s
    }))
    .collect()
}

/// Largest order of a nonvanishing minor.
fn rank_by_minors(m: &QMatrix) -> usize {
    (1..=m.rows().min(m.cols()))
        .rev()
        .find(|&k| {
            subsets(m.rows(), k).iter().any(|rs| {
                subsets(m.cols(), k).iter().any(|cs| {
                    let sub = Matrix::from_rows(rs.iter().map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect()).collect());
                    !det(&sub).is_zero()
                })
            })
        })
        .unwrap_or(0)
}

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![3 => (-3i64..=3).prop_map(q), 1 => (-4i64..=4, 1i64..=3).prop_map(|(n, d)| frac(n, d))]
}

fn matrix(max: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| proptest::collection::vec(rational(), r * c).prop_map(move |v| Matrix::from_vec(r, c, v)))
}

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn nonzero() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(q(1)), Just(q(-1)), Just(q(2)), Just(frac(-1, 3)), Just(frac(5, 2)), Just(q(7))]
}

fn groups() -> Vec<GroupTable> {
    vec![GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::klein_four(), GroupTable::symmetric3()]
}

fn group_and_values() -> impl Strategy<Value = (GroupTable, Vec<Rational>)> {
    (0usize..4).prop_flat_map(|i| {
        let g = groups().swap_remove(i);
        let n = g.order();
        (Just(g), proptest::collection::vec(nonzero(), n))
    })
}

fn unimodular(t: usize, seed: &[i64]) -> QMatrix {
    let mut l = Matrix::identity(t);
    let mut u = Matrix::identity(t);
    let mut k = 0;
    for r in 0..t {
        for c in 0..r {
            l[(r, c)] = q(seed[k % seed.len()]);
            u[(c, r)] = q(seed[(k + 1) % seed.len()]);
            k += 2;
        }
    }
    l.mul(&u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_minors(m in matrix(4)) {
        prop_assert_eq!(rank(&m), rank_by_minors(&m));
    }

    #[test]
    fn rank_nullity(m in matrix(4)) {
        let ker = kernel_basis(&m);
        prop_assert_eq!(ker.len() + rank(&m), m.cols());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(rank(&Matrix::from_columns(m.cols(), &ker)), ker.len());
    }

    #[test]
    fn solutions_satisfy_the_system(m in matrix(4), x in proptest::collection::vec(rational(), 4)) {
        let x = &x[..m.cols()];
        let b = m.apply(x);
        let y = solve_linear(&m, &b).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.apply(&y), b);
    }

    #[test]
    fn quotient_kills_exactly_the_span(m in matrix(4)) {
        let vectors = m.columns();
        let quo = quotient_with_section(m.rows(), &vectors).unwrap();
        prop_assert_eq!(quo.projection.rows(), m.rows() - rank(&m));
        prop_assert!(quo.projection.mul(&quo.section).is_identity());
        prop_assert!(quo.projection.mul(&m).is_zero());
        let ker = kernel_basis(&quo.projection);
        prop_assert_eq!(rank(&Matrix::from_columns(m.rows(), &ker).hstack(&m)), rank(&m));
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(3)) {
        if m.is_square() {
            match inverse(&m) {
                Some(inv) => {
                    prop_assert!(m.mul(&inv).is_identity() && inv.mul(&m).is_identity());
                }
                None => prop_assert!(det(&m).is_zero()),
            }
        }
    }

    #[test]
    fn smith_form_is_a_certified_diagonalization(a in int_matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&s.u.mul(&a).mul(&s.v), &s.d);
        prop_assert!(det(&s.u).abs().is_one() && det(&s.v).abs().is_one());
        let diag = s.diagonal();
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                prop_assert!(r == c || s.d[(r, c)].is_zero());
            }
        }
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        let g = a.entries().iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
        prop_assert_eq!(diag.first().cloned().unwrap_or_default(), g);
    }

    #[test]
    fn integer_solutions_satisfy_the_system(a in int_matrix(), x in proptest::collection::vec(-5i64..=5, 3), flags in proptest::collection::vec(any::<bool>(), 3)) {
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = a.apply(&x);
        let mod2: BTreeSet<usize> = (0..a.rows()).filter(|&r| flags[r]).collect();
        let y = solve_integer_system(&a, &b, &mod2).unwrap().expect("b has an integer preimage");
        let ay = a.apply(&y);
        for r in 0..a.rows() {
            let diff = &ay[r] - &b[r];
            if mod2.contains(&r) {
                prop_assert!((diff % BigInt::from(2)).is_zero());
            } else {
                prop_assert!(diff.is_zero());
            }
        }
    }

    #[test]
    fn coboundaries_validate_and_trivialize((g, values) in group_and_values()) {
        let cat = Arc::new(FinCategory::delooping(&g));
        let beta = Cochain1::new(cat.clone(), values.clone()).unwrap();
        let alpha = coboundary(&beta);
        prop_assert!(alpha.validate().is_empty());
        for a in 0..g.order() {
            for b in 0..g.order() {
                prop_assert_eq!(alpha.value(a, b), &(&values[a] * &values[b] / &values[g.mul(a, b)]));
            }
        }
        let found = trivialize(&alpha).unwrap().expect("coboundary is trivial");
        prop_assert_eq!(coboundary(&found), alpha);
    }

    #[test]
    fn consistency_flags_agree((g, values) in group_and_values(), perturb in proptest::option::of((0usize..36, nonzero()))) {
        let n = g.order();
        let cat = Arc::new(FinCategory::delooping(&g));
        let alpha = coboundary(&Cochain1::new(cat, values).unwrap());
        let mut table: Vec<Vec<Rational>> = (0..n).map(|a| (0..n).map(|b| alpha.value(a, b).clone()).collect()).collect();
        if let Some((k, v)) = perturb {
            table[(k / n) % n][k % n] = v;
        }
        let direct = (0..n).all(|h| (0..n).all(|a| (0..n).all(|f| {
            &table[h][a] * &table[g.mul(h, a)][f] == &table[h][g.mul(a, f)] * &table[a][f]
        })));
        let (is_cocycle, is_assoc) = consistency_check(&g, &table).unwrap();
        prop_assert_eq!(is_cocycle, direct);
        prop_assert_eq!(is_assoc, direct);
    }

    #[test]
    fn module_roundtrip((g, values) in group_and_values(), seed in proptest::collection::vec(-2i64..=2, 1..6)) {
        let n = g.order();
        let cat = Arc::new(FinCategory::delooping(&g));
        let beta = Cochain1::new(cat.clone(), values.clone()).unwrap();
        let alpha: Cocycle2 = coboundary(&beta);
        let p = unimodular(n, &seed);
        let p_inv = inverse(&p).unwrap();
        let mats = (0..n).map(|a| {
            let perm = Matrix::from_columns(n, &(0..n).map(|b| {
                let mut e = vec![q(0); n];
                e[g.mul(a, b)] = q(1);
                e
            }).collect::<Vec<_>>());
            p.mul(&perm).mul(&p_inv).scale(&values[a])
        }).collect();
        let rho = ProjectiveRep::new(cat, vec![n], mats, alpha.clone()).unwrap();
        prop_assert!(rho.validate().is_empty());
        let t = twisted_group_algebra(&g, &alpha).unwrap();
        let m = proj_to_module(&t, &rho).unwrap();
        prop_assert_eq!(module_to_proj(&t, &m).unwrap(), rho);
        prop_assert_eq!(proj_to_module(&t, &module_to_proj(&t, &m).unwrap()).unwrap(), m);
    }
}
