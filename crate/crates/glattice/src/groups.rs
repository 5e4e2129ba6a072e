//! Explicit finite groups given by multiplication tables, and exhaustive
//! subgroup enumeration.

use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

/// Hard cap on the group order; every algorithm in this crate is
/// brute-force and meant to stay verifiable by hand.
pub const MAX_ORDER: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square or has out-of-range entries")]
    MalformedTable,
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("group order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0:?} has no inverse")]
    NoInverse(String),
    #[error("associativity fails on the triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// A finite group of order at most [`MAX_ORDER`], validated exhaustively
/// at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = labels.len();
        if n == 0 || n > MAX_ORDER {
            return Err(GroupError::OrderTooLarge(n));
        }
        if table.len() != n
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(GroupError::MalformedTable);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(GroupError::DuplicateLabel(l.clone()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for x in 0..n {
            if !(0..n).any(|y| table[x][y] == identity && table[y][x] == identity) {
                return Err(GroupError::NoInverse(labels[x].clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            labels,
            table,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("validated group has inverses")
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All subgroups, each exactly once, sorted by order and then
    /// lexicographically by member indices. Enumeration closes every
    /// extension of an already known subgroup by one element, which
    /// reaches every subgroup.
    pub fn subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        let n = self.order();
        let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
        known.insert(vec![self.identity]);
        let mut queue: Vec<Vec<usize>> = vec![vec![self.identity]];
        while let Some(members) = queue.pop() {
            for g in 0..n {
                if members.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = members.clone();
                gens.push(g);
                let closed = self.close(&gens);
                if known.insert(closed.clone()) {
                    queue.push(closed);
                }
            }
        }
        let mut subs: Vec<Vec<usize>> = known.into_iter().collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subs.into_iter()
            .map(|members| Subgroup {
                parent: Arc::clone(self),
                members,
            })
            .collect()
    }

    fn close(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = gens.iter().copied().collect();
        set.insert(self.identity);
        loop {
            let mut next = set.clone();
            for &a in &set {
                for &b in &set {
                    next.insert(self.mul(a, b));
                }
            }
            if next.len() == set.len() {
                break;
            }
            set = next;
        }
        set.into_iter().collect()
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(self),
            members: vec![self.identity],
        }
    }

    pub fn full_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(self),
            members: (0..self.order()).collect(),
        }
    }

    /// The subgroup generated by the given elements.
    pub fn subgroup_generated_by(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        Subgroup {
            parent: Arc::clone(self),
            members: self.close(gens),
        }
    }
}

/// A subgroup of a [`FiniteGroup`], stored as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_whole_group(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// A human-readable name: the member labels in braces.
    pub fn describe(&self) -> String {
        let labels: Vec<&str> = self.members.iter().map(|&g| self.parent.label(g)).collect();
        format!("{{{}}}", labels.join(", "))
    }

    /// The subgroup as a standalone group, with elements reindexed in
    /// member order.
    pub fn as_group(&self) -> FiniteGroup {
        let pos = |g: usize| self.members.binary_search(&g).expect("closed subgroup");
        let labels = self
            .members
            .iter()
            .map(|&g| self.parent.label(g).to_owned())
            .collect();
        let table = self
            .members
            .iter()
            .map(|&a| self.members.iter().map(|&b| pos(self.parent.mul(a, b))).collect())
            .collect();
        FiniteGroup::new(labels, table).expect("a subgroup is a group")
    }
}

/// The Klein four group `<σ, τ | σ² = τ² = 1, στ = τσ>`, with elements
/// ordered (1, σ, τ, στ).
pub fn klein_four() -> Arc<FiniteGroup> {
    let labels = vec!["1".into(), "σ".into(), "τ".into(), "στ".into()];
    // product = bitwise xor on indices
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    Arc::new(FiniteGroup::new(labels, table).expect("Klein table is a group law"))
}

/// The cyclic group of order `n`, elements labeled by exponents.
pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    let labels = (0..n).map(|i| format!("g{i}")).collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    Arc::new(FiniteGroup::new(labels, table).expect("cyclic table is a group law"))
}
