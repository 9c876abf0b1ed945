use crate::error::{Error, Result};

/// Finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTable {
    labels: Vec<String>,
    identity: usize,
    mult: Vec<usize>,
}

impl GroupTable {
    /// Checks closure, identity, inverses and associativity.
    pub fn new(labels: Vec<String>, identity: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let bad = |m: String| Err(Error::InvalidGroupTable(m));
        if n == 0 {
            return bad("empty group".into());
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return bad(format!("table is not {n}x{n}"));
        }
        if identity >= n {
            return bad(format!("identity {identity} out of range"));
        }
        if let Some(x) = table.iter().flatten().find(|&&x| x >= n) {
            return bad(format!("entry {x} out of range"));
        }
        let mult: Vec<usize> = table.into_iter().flatten().collect();
        let g = GroupTable { labels, identity, mult };
        for a in 0..n {
            if g.mul(identity, a) != a || g.mul(a, identity) != a {
                return bad(format!("{} is not a two-sided identity", g.labels[identity]));
            }
            if !(0..n).any(|b| g.mul(a, b) == identity && g.mul(b, a) == identity) {
                return bad(format!("{} has no inverse", g.labels[a]));
            }
            for b in 0..n {
                for c in 0..n {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let labels = (0..n).map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(labels, 0, table).expect("cyclic table")
    }

    /// `{e, a, b, c}` with `a = (1,0)`, `b = (0,1)`, `c = (1,1)`.
    pub fn klein_four() -> Self {
        let labels = ["e", "a", "b", "c"].map(String::from).to_vec();
        let table = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        GroupTable::new(labels, 0, table).expect("klein table")
    }

    /// Permutations of `{1,2,3}` in lexicographic order, composed right to left.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        let labels = ["e", "(23)", "(12)", "(123)", "(132)", "(13)"].map(String::from).to_vec();
        GroupTable::new(labels, 0, table).expect("s3 table")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == self.identity).expect("validated group")
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        let s3 = GroupTable::symmetric3();
        assert_eq!(s3.order(), 6);
        assert_ne!(s3.mul(1, 2), s3.mul(2, 1));
        assert_eq!(s3.mul(3, 3), 4);
        assert_eq!(s3.inverse(3), 4);
        let v = GroupTable::klein_four();
        assert!((0..4).all(|g| v.mul(g, g) == 0));
        assert_eq!(GroupTable::cyclic(4).inverse(1), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        let labels = vec!["e".to_string(), "x".to_string()];
        assert!(GroupTable::new(labels.clone(), 0, vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new(labels.clone(), 1, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(GroupTable::new(labels, 0, vec![vec![0, 1]]).is_err());
    }
}
