//! Multiplicative 2-cocycles on finite categories and their trivialization.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::category::FinCategory;
use crate::error::{Error, Result};
use crate::integer::{solve_integer_system, IntMatrix};
use crate::matrix::Matrix;
use crate::report::{Findings, Violation};
use crate::scalar::{format_rational, Rational};

/// `Q*`-valued function on composable pairs `(g, f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle2 {
    cat: Arc<FinCategory>,
    values: BTreeMap<(usize, usize), Rational>,
}

/// `Q*`-valued function on morphisms.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain1 {
    cat: Arc<FinCategory>,
    values: Vec<Rational>,
}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Cocycle2 {
    /// Requires exactly one value per composable pair.
    pub fn new(cat: Arc<FinCategory>, values: BTreeMap<(usize, usize), Rational>) -> Result<Self> {
        let pairs = cat.composable_pairs();
        if let Some(&(g, f)) = pairs.iter().find(|p| !values.contains_key(p)) {
            return Err(Error::InvalidCocycle(format!("no value for pair {}", cat.pair_label(g, f))));
        }
        if values.len() != pairs.len() {
            return Err(Error::InvalidCocycle("value given for a non-composable pair".into()));
        }
        Ok(Cocycle2 { cat, values })
    }

    pub fn from_fn(cat: Arc<FinCategory>, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let values = cat.composable_pairs().into_iter().map(|(g, h)| ((g, h), f(g, h))).collect();
        Cocycle2 { cat, values }
    }

    pub fn trivial(cat: Arc<FinCategory>) -> Self {
        Self::from_fn(cat, |_, _| Rational::one())
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    /// Value on a composable pair. Panics otherwise.
    pub fn value(&self, g: usize, f: usize) -> &Rational {
        &self.values[&(g, f)]
    }

    pub fn values(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.values
    }

    /// Nonzero values and `a(h,g) a(hg,f) = a(h,gf) a(g,f)` on composable triples.
    pub fn validate(&self) -> Findings {
        let c = &self.cat;
        let mut out: Findings = self
            .values
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(&(g, f), _)| Violation::new("cocycle.nonzero", c.pair_label(g, f), "value is zero"))
            .collect();
        if !out.is_empty() {
            return out;
        }
        for (h, g, f) in c.composable_triples() {
            let lhs = self.value(h, g) * self.value(c.comp(h, g), f);
            let rhs = self.value(h, c.comp(g, f)) * self.value(g, f);
            if lhs != rhs {
                out.push(Violation::new(
                    "cocycle.identity",
                    format!("({}, {}, {})", c.label(h), c.label(g), c.label(f)),
                    format!("{} != {}", format_rational(&lhs), format_rational(&rhs)),
                ));
            }
        }
        out
    }

    /// Equal to 1 whenever either argument is an identity.
    pub fn is_normalized(&self) -> bool {
        self.values.iter().all(|(&(g, f), v)| !(self.cat.is_identity(g) || self.cat.is_identity(f)) || v.is_one())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if !same_category(&self.cat, &other.cat) {
            return Err(Error::CategoryMismatch);
        }
        let values = self.values.iter().map(|(k, v)| (*k, v * &other.values[k])).collect();
        Ok(Cocycle2 { cat: self.cat.clone(), values })
    }

    pub fn invert(&self) -> Result<Self> {
        if self.values.values().any(Zero::is_zero) {
            return Err(Error::InvalidCocycle("cannot invert a zero value".into()));
        }
        let values = self.values.iter().map(|(k, v)| (*k, v.recip())).collect();
        Ok(Cocycle2 { cat: self.cat.clone(), values })
    }
}

impl Cochain1 {
    /// Values must be nonzero, one per morphism.
    pub fn new(cat: Arc<FinCategory>, values: Vec<Rational>) -> Result<Self> {
        if values.len() != cat.num_morphisms() {
            return Err(Error::DimensionMismatch(format!("{} values for {} morphisms", values.len(), cat.num_morphisms())));
        }
        if values.iter().any(Zero::is_zero) {
            return Err(Error::InvalidData("cochain values must be nonzero".into()));
        }
        Ok(Cochain1 { cat, values })
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn value(&self, f: usize) -> &Rational {
        &self.values[f]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn inverse(&self) -> Self {
        Cochain1 { cat: self.cat.clone(), values: self.values.iter().map(Rational::recip).collect() }
    }
}

/// `(d beta)(g, f) = beta(g) beta(f) / beta(g . f)`.
pub fn coboundary(beta: &Cochain1) -> Cocycle2 {
    let c = beta.cat.clone();
    Cocycle2::from_fn(c.clone(), |g, f| beta.value(g) * beta.value(f) / beta.value(c.comp(g, f)))
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Prime factorization of `|n|`, `n != 0`, by trial division.
///
/// A cofactor left after dividing out everything below the trial limit is
/// accepted only when it is provably prime, i.e. below the limit squared.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2u32);
    let mut step = 1u32;
    while &d * &d <= m {
        if d > BigInt::from(TRIAL_LIMIT) {
            return Err(Error::Factorization(n.to_string()));
        }
        let mut e = 0;
        loop {
            let (quot, rem) = m.div_rem(&d);
            if !rem.is_zero() {
                break;
            }
            m = quot;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += step;
        step = 2;
    }
    if m > BigInt::one() {
        out.push((m, 1));
    }
    Ok(out)
}

/// Coordinates of a finitely generated subgroup of `Q*`: a sign bit and
/// exponents over a fixed list of primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarEncoding {
    primes: Vec<BigInt>,
}

/// Sign bit and exponent vector of a rational in a [`ScalarEncoding`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EncodedScalar {
    pub negative: bool,
    pub exponents: Vec<BigInt>,
}

impl ScalarEncoding {
    /// Primes dividing numerators or denominators of `values`.
    pub fn for_values<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Result<Self> {
        let mut primes = BTreeSet::new();
        for v in values {
            if v.is_zero() {
                return Err(Error::InvalidData("zero has no encoding".into()));
            }
            for part in [v.numer(), v.denom()] {
                primes.extend(factor_integer(part)?.into_iter().map(|(p, _)| p));
            }
        }
        Ok(ScalarEncoding { primes: primes.into_iter().collect() })
    }

    pub fn primes(&self) -> &[BigInt] {
        &self.primes
    }

    /// `None` when `x` is zero or involves a prime outside the list.
    pub fn encode(&self, x: &Rational) -> Option<EncodedScalar> {
        if x.is_zero() {
            return None;
        }
        let mut exponents = Vec::with_capacity(self.primes.len());
        let (mut n, mut d) = (x.numer().abs(), x.denom().clone());
        for p in &self.primes {
            let mut e = BigInt::zero();
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            while d.is_multiple_of(p) {
                d /= p;
                e -= 1;
            }
            exponents.push(e);
        }
        (n.is_one() && d.is_one()).then_some(EncodedScalar { negative: x.is_negative(), exponents })
    }

    pub fn decode(&self, e: &EncodedScalar) -> Rational {
        let mut x = Rational::one();
        for (p, k) in self.primes.iter().zip(&e.exponents) {
            let base = Rational::from_integer(p.clone());
            let pow = k.abs().to_usize().expect("exponent fits in usize");
            let f = num_traits::pow(base, pow);
            x = if k.is_negative() { x / f } else { x * f };
        }
        if e.negative {
            -x
        } else {
            x
        }
    }
}

/// Finds `beta` with `coboundary(beta) == alpha`, or `None` if the class is
/// nontrivial.
///
/// Values are mapped to a sign bit and prime exponents; each prime gives an
/// integer system and the sign gives a system modulo 2, all with the
/// coboundary incidence matrix.
pub fn trivialize(alpha: &Cocycle2) -> Result<Option<Cochain1>> {
    if let Some(v) = alpha.validate().first() {
        return Err(Error::InvalidCocycle(v.to_string()));
    }
    let c = alpha.category();
    let pairs = c.composable_pairs();
    let n = c.num_morphisms();
    let enc = ScalarEncoding::for_values(alpha.values.values())?;
    let encoded: Vec<EncodedScalar> = pairs.iter().map(|&(g, f)| enc.encode(alpha.value(g, f)).expect("prime list covers values")).collect();

    let mut d: IntMatrix = Matrix::zeros(pairs.len(), n);
    for (row, &(g, f)) in pairs.iter().enumerate() {
        let gf = c.comp(g, f);
        d[(row, g)] += 1;
        d[(row, f)] += 1;
        d[(row, gf)] -= 1;
    }
    let mut exps = vec![vec![BigInt::zero(); n]; enc.primes().len()];
    for (p, slot) in exps.iter_mut().enumerate() {
        let b: Vec<BigInt> = encoded.iter().map(|e| e.exponents[p].clone()).collect();
        match solve_integer_system(&d, &b, &BTreeSet::new())? {
            Some(x) => *slot = x,
            None => return Ok(None),
        }
    }
    let signs: Vec<BigInt> = encoded.iter().map(|e| BigInt::from(u8::from(e.negative))).collect();
    let all_rows: BTreeSet<usize> = (0..pairs.len()).collect();
    let Some(sign) = solve_integer_system(&d, &signs, &all_rows)? else {
        return Ok(None);
    };
    let values = (0..n)
        .map(|m| {
            enc.decode(&EncodedScalar {
                negative: sign[m].is_odd(),
                exponents: exps.iter().map(|x| x[m].clone()).collect(),
            })
        })
        .collect();
    let beta = Cochain1::new(c.clone(), values)?;
    debug_assert_eq!(&coboundary(&beta), alpha);
    Ok(Some(beta))
}

/// `beta` with `a = b * coboundary(beta)`, if one exists.
pub fn cohomologous(a: &Cocycle2, b: &Cocycle2) -> Result<Option<Cochain1>> {
    trivialize(&a.multiply(&b.invert()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::scalar::{frac, q};

    fn z2() -> Arc<FinCategory> {
        Arc::new(FinCategory::delooping(&GroupTable::cyclic(2)))
    }

    #[test]
    fn sign_cocycle_on_z2_is_nontrivial() {
        let a = Cocycle2::from_fn(z2(), |g, f| if g == 1 && f == 1 { q(-1) } else { q(1) });
        assert!(a.validate().is_empty());
        assert!(a.is_normalized());
        assert_eq!(trivialize(&a).unwrap(), None);
    }

    #[test]
    fn square_class_is_trivial() {
        let a = Cocycle2::from_fn(z2(), |g, f| if g == 1 && f == 1 { q(4) } else { q(1) });
        let beta = trivialize(&a).unwrap().unwrap();
        assert_eq!(coboundary(&beta), a);
        assert_eq!(beta.value(1).clone() * beta.value(1), q(4));
    }

    #[test]
    fn non_normalized_coboundary() {
        let beta = Cochain1::new(z2(), vec![frac(-3, 2), q(5)]).unwrap();
        let a = coboundary(&beta);
        assert!(!a.is_normalized());
        assert_eq!(coboundary(&trivialize(&a).unwrap().unwrap()), a);
    }

    #[test]
    fn broken_identity_is_reported() {
        let a = Cocycle2::from_fn(z2(), |g, f| if (g, f) == (0, 1) { q(2) } else { q(1) });
        assert!(a.validate().iter().any(|v| v.check == "cocycle.identity"));
        assert!(trivialize(&a).is_err());
    }

    #[test]
    fn missing_pair_is_an_error() {
        let mut values = BTreeMap::new();
        values.insert((0, 0), q(1));
        assert!(Cocycle2::new(z2(), values).is_err());
    }

    #[test]
    fn encoding_roundtrip() {
        let xs = [frac(-12, 35), frac(49, 8), q(1)];
        let enc = ScalarEncoding::for_values(&xs).unwrap();
        assert_eq!(enc.primes().len(), 4);
        for x in &xs {
            assert_eq!(&enc.decode(&enc.encode(x).unwrap()), x);
        }
        assert!(enc.encode(&q(11)).is_none());
        assert_eq!(factor_integer(&BigInt::from(360)).unwrap().len(), 3);
    }
}
