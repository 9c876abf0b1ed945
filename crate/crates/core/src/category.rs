use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::report::{Findings, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// Finite category with an explicit composition table.
///
/// `compose(g, f)` is `g . f` and is defined exactly when `target(f) == source(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    table: Vec<Option<usize>>,
}

impl FinCategory {
    /// Builds the table after range checks only; see [`FinCategory::validate`].
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let (n_obj, n) = (objects.len(), morphisms.len());
        let bad = |m: String| Err(Error::InvalidCategory(m));
        if identities.len() != n_obj {
            return bad(format!("{} identities for {n_obj} objects", identities.len()));
        }
        if let Some(m) = morphisms.iter().find(|m| m.source >= n_obj || m.target >= n_obj) {
            return bad(format!("morphism {} has an endpoint out of range", m.label));
        }
        if let Some(&i) = identities.iter().find(|&&i| i >= n) {
            return bad(format!("identity {i} out of range"));
        }
        let mut table = vec![None; n * n];
        for &(g, f, gf) in compositions {
            if g >= n || f >= n || gf >= n {
                return bad(format!("composition ({g}, {f}) -> {gf} out of range"));
            }
            if morphisms[f].target != morphisms[g].source {
                return bad(format!("composition given for non-composable pair ({g}, {f})"));
            }
            match table[g * n + f] {
                Some(x) if x != gf => return bad(format!("pair ({g}, {f}) composed twice")),
                _ => table[g * n + f] = Some(gf),
            }
        }
        Ok(FinCategory { objects, morphisms, identities, table })
    }

    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let c = Self::from_parts(objects, morphisms, identities, compositions)?;
        match c.validate().first() {
            None => Ok(c),
            Some(v) => Err(Error::InvalidCategory(v.to_string())),
        }
    }

    /// One object, one morphism per group element, `compose(g, h) = g h`.
    pub fn delooping(g: &GroupTable) -> Self {
        let n = g.order();
        let morphisms = (0..n).map(|a| Morphism { label: g.label(a).to_string(), source: 0, target: 0 }).collect();
        let comps: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, g.mul(a, b))).collect();
        Self::from_parts(vec!["*".into()], morphisms, vec![g.identity()], &comps).expect("delooping of a valid group")
    }

    /// Identity laws, completeness, endpoints of composites and associativity.
    pub fn validate(&self) -> Findings {
        let mut out = Vec::new();
        let v = |check: &str, loc: String, detail: &str| Violation::new(check, loc, detail);
        for (x, &i) in self.identities.iter().enumerate() {
            if self.source(i) != x || self.target(i) != x {
                out.push(v("category.identity", self.objects[x].clone(), "identity has wrong endpoints"));
            }
        }
        for (g, f) in self.composable_pairs_raw() {
            let loc = format!("({}, {})", self.label(g), self.label(f));
            match self.compose(g, f) {
                None => out.push(v("category.composition", loc, "composable pair has no composite")),
                Some(gf) => {
                    if self.source(gf) != self.source(f) || self.target(gf) != self.target(g) {
                        out.push(v("category.composition", loc, "composite has wrong endpoints"));
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..self.morphisms.len() {
            let (s, t) = (self.source(f), self.target(f));
            if self.compose(f, self.identities[s]) != Some(f) || self.compose(self.identities[t], f) != Some(f) {
                out.push(v("category.unit_law", self.label(f).to_string(), "identity law fails"));
            }
        }
        for (h, g, f) in self.composable_triples() {
            let l = self.compose(self.compose(h, g).unwrap(), f);
            let r = self.compose(h, self.compose(g, f).unwrap());
            if l != r {
                out.push(v(
                    "category.associativity",
                    format!("({}, {}, {})", self.label(h), self.label(g), self.label(f)),
                    "composition is not associative",
                ));
            }
        }
        out
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn label(&self, f: usize) -> &str {
        &self.morphisms[f].label
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities.contains(&f)
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.morphisms.len() + f]
    }

    fn composable_pairs_raw(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.morphisms.len();
        (0..n).flat_map(move |g| (0..n).map(move |f| (g, f))).filter(|&(g, f)| self.target(f) == self.source(g))
    }

    /// Pairs `(g, f)` with `g . f` defined, in lexicographic order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        self.composable_pairs_raw().collect()
    }

    /// Triples `(h, g, f)` with `h . g . f` defined, in lexicographic order.
    pub fn composable_triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.morphisms.len();
        let mut out = Vec::new();
        for (h, g) in self.composable_pairs_raw() {
            for f in (0..n).filter(|&f| self.target(f) == self.source(g)) {
                out.push((h, g, f));
            }
        }
        out
    }

    /// Composite of a composable pair. Panics otherwise.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).unwrap_or_else(|| panic!("{} . {} is not defined", self.label(g), self.label(f)))
    }

    pub(crate) fn pair_label(&self, g: usize, f: usize) -> String {
        format!("({}, {})", self.label(g), self.label(f))
    }
}
