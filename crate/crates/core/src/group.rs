//! Finite grading groups given by multiplication tables.

use crate::error::{Error, Result};
use std::sync::Arc;

/// Index of a group element in its `FiniteGroup`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// table[i][j] = index of g_i * g_j
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a multiplication table and precompute identity and inverses.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range in row {i}")));
                }
            }
        }
        // identity
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        // associativity
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        // inverses
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse[a] = inv;
        }
        Ok(Arc::new(FiniteGroup {
            name: name.into(),
            order: n,
            table,
            identity,
            inverse,
        }))
    }

    /// Cyclic group of order n; element i is the class of i, identity 0.
    pub fn cyclic(n: usize) -> Arc<Self> {
        assert!(n >= 1);
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        Self::from_table(format!("Z/{n}"), table).expect("cyclic table is a group")
    }

    /// Symmetric group on 3 letters. Elements indexed 0..6 as the
    /// permutations [id, (12), (13), (23), (123), (132)] acting on {1,2,3};
    /// product g_i * g_j applies g_j first, then g_i.
    pub fn s3() -> Arc<Self> {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2], // id
            [1, 0, 2], // (12)
            [2, 1, 0], // (13)
            [0, 2, 1], // (23)
            [1, 2, 0], // (123): 1->2, 2->3, 3->1
            [2, 0, 1], // (132)
        ];
        let compose = |a: &[usize; 3], b: &[usize; 3]| -> [usize; 3] {
            [a[b[0]], a[b[1]], a[b[2]]]
        };
        let mut table = vec![vec![0usize; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                let prod = compose(&perms[i], &perms[j]);
                table[i][j] = perms.iter().position(|p| *p == prod).unwrap();
            }
        }
        Self::from_table("S3", table).expect("s3 table is a group")
    }

    /// Look up a named preset: "Z/1".."Z/6" or "S3".
    pub fn preset(name: &str) -> Option<Arc<Self>> {
        match name {
            "Z/1" => Some(Self::cyclic(1)),
            "Z/2" => Some(Self::cyclic(2)),
            "Z/3" => Some(Self::cyclic(3)),
            "Z/4" => Some(Self::cyclic(4)),
            "Z/5" => Some(Self::cyclic(5)),
            "Z/6" => Some(Self::cyclic(6)),
            "S3" => Some(Self::s3()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem(self.identity)
    }

    #[inline]
    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        GroupElem(self.table[a.0][b.0])
    }

    #[inline]
    pub fn inv(&self, a: GroupElem) -> GroupElem {
        GroupElem(self.inverse[a.0])
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        (0..self.order).map(GroupElem)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_are_groups() {
        for n in 1..=6 {
            let g = FiniteGroup::cyclic(n);
            assert_eq!(g.order(), n);
            assert_eq!(g.identity(), GroupElem(0));
            assert_eq!(g.mul(GroupElem(1 % n), GroupElem(n - 1)), GroupElem(0));
        }
    }

    #[test]
    fn s3_structure() {
        let g = FiniteGroup::s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // a transposition squares to the identity
        assert_eq!(g.mul(GroupElem(1), GroupElem(1)), g.identity());
        // (123)^3 = id
        let r = GroupElem(4);
        assert_eq!(g.mul(g.mul(r, r), r), g.identity());
        // (12)(13) != (13)(12)
        assert_ne!(
            g.mul(GroupElem(1), GroupElem(2)),
            g.mul(GroupElem(2), GroupElem(1))
        );
    }

    #[test]
    fn bad_tables_rejected() {
        // no identity
        let t = vec![vec![1, 0], vec![1, 0]];
        assert!(FiniteGroup::from_table("bad", t).is_err());
        // non-associative latin-ish square with identity: order-3 with a twist
        let t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(FiniteGroup::from_table("bad", t).is_err());
    }

    #[test]
    fn presets_resolve() {
        assert!(FiniteGroup::preset("Z/4").is_some());
        assert!(FiniteGroup::preset("S3").is_some());
        assert!(FiniteGroup::preset("Z/9").is_none());
    }
}
