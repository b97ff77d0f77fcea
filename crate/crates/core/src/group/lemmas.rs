//! Center, centralizers, rank, and the structure results used for odd
//! rank-3 p-groups with cyclic center.

use std::collections::HashSet;

use serde::Serialize;

use super::{
    all_subgroups, is_prime, subgroup_closure, BitSet, FiniteGroup, GroupError, Result, SubgroupRecord,
    DEFAULT_SUBGROUP_CAP,
};

/// Builds a full record for a subgroup given by its members. Uses the cached
/// subgroup lattice when the group is small enough, so the class id is set.
pub(crate) fn record_of(g: &FiniteGroup, members: BitSet) -> SubgroupRecord {
    if g.order() <= DEFAULT_SUBGROUP_CAP {
        if let Ok(l) = all_subgroups(g) {
            if let Some(r) = l.find(&members) {
                return r.clone();
            }
        }
    }
    let elems: Vec<usize> = members.iter().collect();
    let mut generators = Vec::new();
    let mut span = BitSet::from_indices(g.order(), [0]);
    for &x in &elems {
        if !span.contains(x) {
            generators.push(x);
            span = subgroup_closure(g, &generators);
        }
    }
    let order = elems.len();
    let is_abelian = generators.iter().all(|&a| generators.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    let is_normal = g
        .generators()
        .iter()
        .all(|&s| generators.iter().all(|&h| members.contains(g.conj(s, h))));
    let is_elementary_abelian = is_abelian && {
        let os: HashSet<usize> = elems.iter().skip(1).map(|&x| g.element_order(x)).collect();
        os.len() <= 1 && os.iter().all(|&o| is_prime(o))
    };
    let rank = max_elementary_rank(g, Some(&members));
    SubgroupRecord {
        members,
        order,
        generators,
        is_normal,
        is_abelian,
        is_elementary_abelian,
        rank,
        class_id: usize::MAX,
    }
}

pub fn center(g: &FiniteGroup) -> SubgroupRecord {
    let gens = g.generators();
    centralizer(g, gens)
}

/// C_G(S) for a set of elements S (pass a subgroup's generators or members).
pub fn centralizer(g: &FiniteGroup, set: &[usize]) -> SubgroupRecord {
    let members = BitSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&x| set.iter().all(|&s| g.mul(x, s) == g.mul(s, x))),
    );
    record_of(g, members)
}

/// rk(G): the largest rank of an elementary abelian subgroup.
pub fn elementary_abelian_rank(g: &FiniteGroup) -> usize {
    max_elementary_rank(g, None)
}

/// Depth-first search over elementary abelian subgroups inside `within`
/// (the whole group when `None`).
fn max_elementary_rank(g: &FiniteGroup, within: Option<&BitSet>) -> usize {
    let inside = |x: usize| within.is_none_or(|w| w.contains(x));
    let n = g.order();
    let mut primes: Vec<usize> = (1..n).filter(|&x| inside(x)).map(|x| g.element_order(x)).filter(|&o| is_prime(o)).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut best = 0;
    for p in primes {
        let order_p: Vec<usize> = (1..n).filter(|&x| inside(x) && g.element_order(x) == p).collect();
        let mut visited: HashSet<BitSet> = HashSet::new();
        let mut stack = vec![(BitSet::from_indices(n, [0]), Vec::<usize>::new())];
        while let Some((e, gens)) = stack.pop() {
            best = best.max(gens.len());
            for &x in &order_p {
                if e.contains(x) || !gens.iter().all(|&s| g.mul(s, x) == g.mul(x, s)) {
                    continue;
                }
                let mut ng = gens.clone();
                ng.push(x);
                let span = subgroup_closure(g, &ng);
                if visited.insert(span.clone()) {
                    stack.push((span, ng));
                }
            }
        }
    }
    best
}

fn odd_rank3_cyclic_center(g: &FiniteGroup) -> Result<(usize, SubgroupRecord)> {
    let p = g
        .p_group_prime()
        .ok_or_else(|| GroupError::NoSuchQ(format!("{} is not a p-group", g.label())))?;
    if p == 2 {
        return Err(GroupError::NoSuchQ("p must be odd".into()));
    }
    let rk = elementary_abelian_rank(g);
    if rk != 3 {
        return Err(GroupError::NoSuchQ(format!("rk(G) = {rk}, expected 3")));
    }
    let z = center(g);
    let rz = max_elementary_rank(g, Some(&z.members));
    if rz != 1 {
        return Err(GroupError::NoSuchQ(format!("rk(Z(G)) = {rz}, expected 1")));
    }
    Ok((p, z))
}

/// Every normal subgroup Q of type (p,p) with Q meeting Z(G) nontrivially,
/// in lexicographic member order.
pub fn valid_qs(g: &FiniteGroup) -> Result<Vec<SubgroupRecord>> {
    let (p, z) = odd_rank3_cyclic_center(g)?;
    let z0 = z.elements().find(|&x| g.element_order(x) == p).expect("nontrivial center");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let zline = subgroup_closure(g, &[z0]);
    for x in 1..g.order() {
        if g.element_order(x) != p || zline.contains(x) {
            continue;
        }
        let q = subgroup_closure(g, &[z0, x]);
        if !seen.insert(q.clone()) {
            continue;
        }
        let normal = g.generators().iter().all(|&s| q.contains(g.conj(s, x)));
        if normal {
            out.push(q);
        }
    }
    out.sort();
    if out.is_empty() {
        return Err(GroupError::NoSuchQ(format!("no candidate in {}", g.label())));
    }
    Ok(out.into_iter().map(|m| record_of(g, m)).collect())
}

/// The least valid Q in lexicographic member order.
pub fn find_normal_q(g: &FiniteGroup) -> Result<SubgroupRecord> {
    Ok(valid_qs(g)?.remove(0))
}

/// The four possible shapes of a subgroup meeting the center trivially.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Classification {
    Cyclic { generator: usize },
    InCentralizerOfQ,
    /// Abelian of type (p, p^{n-1}); `cyclic_generator` spans the index-p cyclic subgroup.
    AbelianMaximalCyclic { p: usize, cyclic_order: usize, cyclic_generator: usize },
    /// Nonabelian of order p^n with a cyclic subgroup of index p, p odd.
    ModularM { order: usize, cyclic_generator: usize },
}

/// Classifies H (with H meeting Z(G) trivially) into the first matching
/// shape, in the order cyclic, inside C_G(Q), abelian (p,p^{n-1}), M(p^n).
pub fn classify_subgroup(g: &FiniteGroup, q: &SubgroupRecord, h: &SubgroupRecord) -> Result<Classification> {
    let p = g
        .p_group_prime()
        .ok_or_else(|| GroupError::Unclassifiable("not a p-group".into()))?;
    if let Some(x) = h.elements().find(|&x| g.element_order(x) == h.order) {
        return Ok(Classification::Cyclic { generator: x });
    }
    let cq = centralizer(g, &q.generators);
    if h.is_subgroup_of(&cq) {
        return Ok(Classification::InCentralizerOfQ);
    }
    let big = h.order / p;
    let maximal_cyclic = h.elements().find(|&x| g.element_order(x) == big);
    match maximal_cyclic {
        Some(y) if h.is_abelian => {
            Ok(Classification::AbelianMaximalCyclic { p, cyclic_order: big, cyclic_generator: y })
        }
        Some(y) if p > 2 && h.order >= p * p * p => {
            Ok(Classification::ModularM { order: h.order, cyclic_generator: y })
        }
        _ => Err(GroupError::Unclassifiable(format!(
            "subgroup of order {} with generators {:?}",
            h.order, h.generators
        ))),
    }
}
