//! Finite groups as indexed Cayley tables.
//!
//! Every group in this crate is stored as a full multiplication table over
//! element indices `0..order`, with index 0 the identity. Subgroups are bitsets
//! over those indices.

mod bitset;
mod catalog;
mod classes;
mod construct;
mod embed;
mod lemmas;
mod subgroups;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

pub use bitset::BitSet;
pub use catalog::{catalog_group, CatalogSpec};
pub use classes::ClassPartition;
pub use embed::Embedded;
pub use lemmas::{
    center, centralizer, classify_subgroup, elementary_abelian_rank, find_normal_q, valid_qs,
    Classification,
};
pub use subgroups::{
    all_subgroups, all_subgroups_with_cap, subgroup_closure, SubgroupLattice, SubgroupRecord,
    DEFAULT_SUBGROUP_CAP,
};

use crate::character::CharacterTable;

/// Default cap on the order of a group closed from permutation generators.
pub const DEFAULT_PERMUTATION_CAP: usize = 10_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup { reason: String, witness: Vec<usize> },
    #[error("group order {order} exceeds the configured cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("bad group specification: {0}")]
    BadSpec(String),
    #[error("no normal subgroup Q of type (p,p) meeting the center: {0}")]
    NoSuchQ(String),
    #[error("subgroup could not be classified: {0}")]
    Unclassifiable(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// A finite group given by its multiplication table.
///
/// Elements are the indices `0..order()`; index 0 is the identity.
#[derive(Debug)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    elt_order: Vec<u32>,
    exponent: usize,
    label: String,
    /// Faithful permutation action, when the group was built from permutations.
    permutations: Option<Vec<Vec<usize>>>,
    /// Coordinates with respect to a cyclic decomposition, for groups built as
    /// products of cyclic groups: `(moduli, coords[element])`.
    cyclic_coords: Option<(Vec<usize>, Vec<Vec<usize>>)>,
    classes: OnceLock<ClassPartition>,
    generators: OnceLock<Vec<usize>>,
    char_table: OnceLock<Arc<CharacterTable>>,
    subgroup_lattice: OnceLock<Arc<SubgroupLattice>>,
}

impl FiniteGroup {
    /// Builds a group from a table whose identity is already index 0.
    /// No axioms are checked here.
    fn from_table_unchecked(n: usize, table: Vec<u32>, label: String) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row.iter().position(|&c| c == 0).expect("every row contains the identity");
            inv[a] = b as u32;
        }
        let mut elt_order = vec![1u32; n];
        for a in 1..n {
            let mut k = 1;
            let mut x = a;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            elt_order[a] = k;
        }
        let exponent = elt_order.iter().fold(1usize, |acc, &o| acc.lcm(&(o as usize)));
        FiniteGroup {
            n,
            table,
            inv,
            elt_order,
            exponent,
            label,
            permutations: None,
            cyclic_coords: None,
            classes: OnceLock::new(),
            generators: OnceLock::new(),
            char_table: OnceLock::new(),
            subgroup_lattice: OnceLock::new(),
        }
    }

    /// Closes a set of concrete generators under a multiplication and
    /// returns the resulting group. `identity` must be the neutral element.
    pub(crate) fn from_closure<T, F>(identity: T, gens: &[T], mul: F, label: String, cap: usize) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let y = mul(&elems[i], g);
                if !index.contains_key(&y) {
                    if elems.len() >= cap {
                        return Err(GroupError::TooLarge { order: elems.len() + 1, cap });
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = mul(&elems[a], &elems[b]);
                table[a * n + b] = index[&c] as u32;
            }
        }
        Ok((Self::from_table_unchecked(n, table, label), elems))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g a g^{-1}`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let k = k % self.elt_order[a] as usize;
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.elt_order[a] as usize
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The prime `p` when the order is a power of `p` (order > 1).
    pub fn p_group_prime(&self) -> Option<usize> {
        if self.n == 1 {
            return None;
        }
        let p = smallest_prime_factor(self.n);
        let mut m = self.n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        (m == 1).then_some(p)
    }

    pub fn permutation_action(&self) -> Option<&[Vec<usize>]> {
        self.permutations.as_deref()
    }

    pub(crate) fn cyclic_coords(&self) -> Option<&(Vec<usize>, Vec<Vec<usize>>)> {
        self.cyclic_coords.as_ref()
    }

    pub(crate) fn set_cyclic_coords(&mut self, moduli: Vec<usize>, coords: Vec<Vec<usize>>) {
        self.cyclic_coords = Some((moduli, coords));
    }

    /// The conjugacy class partition (computed once).
    pub fn classes(&self) -> &ClassPartition {
        self.classes.get_or_init(|| ClassPartition::compute(self))
    }

    /// A small generating set: greedily add the least element not yet in the
    /// span of the previous ones.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut span = BitSet::new(self.n);
            span.insert(0);
            for x in 1..self.n {
                if !span.contains(x) {
                    gens.push(x);
                    span = subgroup_closure(self, &gens);
                }
            }
            gens
        })
    }

    pub(crate) fn cached_table(&self) -> &OnceLock<Arc<CharacterTable>> {
        &self.char_table
    }

    pub(crate) fn cached_lattice(&self) -> &OnceLock<Arc<SubgroupLattice>> {
        &self.subgroup_lattice
    }

    /// Checks the group axioms. Exhaustive for order <= 512; above that,
    /// associativity is checked on a deterministic sample of triples.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(GroupError::NotAGroup { reason: "identity".into(), witness: vec![0, a] });
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(GroupError::NotAGroup { reason: "inverse".into(), witness: vec![a] });
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::NotAGroup { reason: "associativity".into(), witness: vec![a, b, c] })
            } else {
                Ok(())
            }
        };
        if n <= 512 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..200_000 {
                let (a, b, c) = (next(), next(), next());
                check(a, b, c)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn smallest_prime_factor(n: usize) -> usize {
    if n < 2 {
        return n;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Shared handle to a group.
pub type Group = Arc<FiniteGroup>;

pub use construct::{
    abelian, central_product, cyclic, direct_product, extraspecial, group_from_cayley_table,
    group_from_permutations, group_from_permutations_with_cap, heisenberg, modular,
};
