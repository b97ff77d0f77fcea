//! Subgroup enumeration.
//!
//! For p-groups the subgroups are built layer by layer: every subgroup of
//! order p^{k+1} contains a normal subgroup H of order p^k, so it has the form
//! <H, x> with x normalizing H and x^p in H. Other groups fall back to joining
//! subgroups with cyclic subgroups until nothing new appears.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use super::{BitSet, FiniteGroup, GroupError, Result};

pub const DEFAULT_SUBGROUP_CAP: usize = 3125;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub members: BitSet,
    pub order: usize,
    pub generators: Vec<usize>,
    pub is_normal: bool,
    pub is_abelian: bool,
    pub is_elementary_abelian: bool,
    /// Rank of the largest elementary abelian subgroup contained in this one.
    pub rank: usize,
    pub class_id: usize,
}

impl SubgroupRecord {
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupRecord) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn meets_trivially(&self, other: &SubgroupRecord) -> bool {
        self.members.intersection_count(&other.members) == 1
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.elements().any(|x| g.element_order(x) == self.order)
    }
}

/// All subgroups of a group, sorted by order then by member set.
#[derive(Debug)]
pub struct SubgroupLattice {
    records: Vec<SubgroupRecord>,
    index: HashMap<BitSet, usize>,
    class_members: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn records(&self) -> &[SubgroupRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, i: usize) -> &SubgroupRecord {
        &self.records[i]
    }

    pub fn position(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn find(&self, members: &BitSet) -> Option<&SubgroupRecord> {
        self.position(members).map(|i| &self.records[i])
    }

    /// Indices of the subgroups in each conjugacy class, by class id.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.class_members
    }

    /// One representative (the first in sorted order) per conjugacy class.
    pub fn class_representatives(&self) -> Vec<&SubgroupRecord> {
        self.class_members.iter().map(|c| &self.records[c[0]]).collect()
    }

    /// Subgroups K > H with no subgroup strictly between them.
    pub fn minimal_overgroups(&self, h: &SubgroupRecord) -> Vec<usize> {
        let over: Vec<usize> = (0..self.records.len())
            .filter(|&i| self.records[i].order > h.order && h.is_subgroup_of(&self.records[i]))
            .collect();
        over.iter()
            .copied()
            .filter(|&k| {
                !over.iter().any(|&l| {
                    self.records[l].order < self.records[k].order
                        && self.records[l].is_subgroup_of(&self.records[k])
                })
            })
            .collect()
    }
}

/// The subgroup generated by `gens`.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[usize]) -> BitSet {
    let mut set = BitSet::new(g.order());
    set.insert(0);
    let mut list = vec![0];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                list.push(y);
            }
        }
        i += 1;
    }
    set
}

/// All subgroups with the default order cap, cached on the group.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Arc<SubgroupLattice>> {
    if let Some(l) = g.cached_lattice().get() {
        return Ok(l.clone());
    }
    let l = Arc::new(all_subgroups_with_cap(g, DEFAULT_SUBGROUP_CAP)?);
    Ok(g.cached_lattice().get_or_init(|| l).clone())
}

pub fn all_subgroups_with_cap(g: &FiniteGroup, cap: usize) -> Result<SubgroupLattice> {
    if g.order() > cap {
        return Err(GroupError::TooLarge { order: g.order(), cap });
    }
    let found = match g.p_group_prime() {
        Some(p) => p_group_layers(g, p),
        None => join_closure(g),
    };
    Ok(finish(g, found))
}

fn p_group_layers(g: &FiniteGroup, p: usize) -> Vec<(BitSet, Vec<usize>)> {
    let n = g.order();
    let mut all = vec![(BitSet::from_indices(n, [0]), Vec::new())];
    let mut layer: Vec<(BitSet, Vec<usize>)> = all.clone();
    while !layer.is_empty() && layer[0].0.count() < n {
        let ext: Vec<Vec<(BitSet, usize)>> = layer
            .par_iter()
            .map(|(h, hgens)| {
                let mut covered = h.clone();
                let mut out = Vec::new();
                for x in 0..n {
                    if covered.contains(x) || !h.contains(g.pow(x, p)) {
                        continue;
                    }
                    if !hgens.iter().all(|&s| h.contains(g.conj(x, s))) {
                        continue;
                    }
                    let mut k = h.clone();
                    let mut xi = 0;
                    for _ in 1..p {
                        xi = g.mul(xi, x);
                        for y in h.iter() {
                            k.insert(g.mul(xi, y));
                        }
                    }
                    for y in k.iter() {
                        covered.insert(y);
                    }
                    out.push((k, x));
                }
                out
            })
            .collect();
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for ((_, hgens), exts) in layer.iter().zip(ext) {
            for (k, x) in exts {
                if seen.insert(k.clone()) {
                    let mut gens = hgens.clone();
                    gens.push(x);
                    next.push((k, gens));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn join_closure(g: &FiniteGroup) -> Vec<(BitSet, Vec<usize>)> {
    let n = g.order();
    let mut seen: HashMap<BitSet, Vec<usize>> = HashMap::new();
    let mut cyclic_gens = Vec::new();
    for x in 0..n {
        let c = subgroup_closure(g, &[x]);
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(c) {
            e.insert(if x == 0 { vec![] } else { vec![x] });
            cyclic_gens.push(x);
        }
    }
    let mut queue: Vec<BitSet> = seen.keys().cloned().collect();
    queue.sort();
    while let Some(h) = queue.pop() {
        let hgens = seen[&h].clone();
        for &x in &cyclic_gens {
            if h.contains(x) {
                continue;
            }
            let mut gens = hgens.clone();
            gens.push(x);
            let k = subgroup_closure(g, &gens);
            if !seen.contains_key(&k) {
                seen.insert(k.clone(), gens);
                queue.push(k);
            }
        }
    }
    seen.into_iter().collect()
}

fn finish(g: &FiniteGroup, mut found: Vec<(BitSet, Vec<usize>)>) -> SubgroupLattice {
    found.sort_by(|a, b| a.0.count().cmp(&b.0.count()).then_with(|| a.0.cmp(&b.0)));
    let ggens = g.generators().to_vec();
    let mut records: Vec<SubgroupRecord> = found
        .into_par_iter()
        .map(|(members, generators)| {
            let order = members.count();
            let is_normal = ggens.iter().all(|&s| generators.iter().all(|&h| members.contains(g.conj(s, h))));
            let is_abelian = generators
                .iter()
                .all(|&a| generators.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
            let is_elementary_abelian = is_abelian && {
                let mut orders = members.iter().skip(1).map(|x| g.element_order(x));
                match orders.next() {
                    None => true,
                    Some(q) => super::is_prime(q) && orders.all(|o| o == q),
                }
            };
            SubgroupRecord {
                members,
                order,
                generators,
                is_normal,
                is_abelian,
                is_elementary_abelian,
                rank: 0,
                class_id: usize::MAX,
            }
        })
        .collect();

    // rank: largest elementary abelian subgroup inside
    let mut elem: Vec<(usize, usize)> = records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_elementary_abelian)
        .map(|(i, r)| (i, elementary_rank_of_order(r.order)))
        .collect();
    elem.sort_by(|a, b| b.1.cmp(&a.1));
    let ranks: Vec<usize> = records
        .par_iter()
        .map(|r| {
            elem.iter()
                .find(|&&(e, _)| records[e].order <= r.order && records[e].members.is_subset(&r.members))
                .map_or(0, |&(_, k)| k)
        })
        .collect();
    for (r, k) in records.iter_mut().zip(ranks) {
        r.rank = k;
    }

    let index: HashMap<BitSet, usize> =
        records.iter().enumerate().map(|(i, r)| (r.members.clone(), i)).collect();
    let mut class_members: Vec<Vec<usize>> = Vec::new();
    for i in 0..records.len() {
        if records[i].class_id != usize::MAX {
            continue;
        }
        let id = class_members.len();
        let mut orbit = vec![i];
        records[i].class_id = id;
        let mut j = 0;
        while j < orbit.len() {
            let cur = records[orbit[j]].members.clone();
            for &s in &ggens {
                let conj = BitSet::from_indices(g.order(), cur.iter().map(|h| g.conj(s, h)));
                let k = index[&conj];
                if records[k].class_id == usize::MAX {
                    records[k].class_id = id;
                    orbit.push(k);
                }
            }
            j += 1;
        }
        orbit.sort_unstable();
        class_members.push(orbit);
    }
    SubgroupLattice { records, index, class_members }
}

fn elementary_rank_of_order(order: usize) -> usize {
    if order == 1 {
        return 0;
    }
    let p = super::smallest_prime_factor(order);
    let mut k = 0;
    let mut m = order;
    while m > 1 {
        m /= p;
        k += 1;
    }
    k
}
