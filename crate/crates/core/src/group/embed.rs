use std::sync::Arc;

use super::{BitSet, FiniteGroup, Group, SubgroupRecord};

/// A subgroup realised as a standalone group, with the index maps to and
/// from its parent. Local indices follow the parent's order, so the
/// identity stays at 0.
#[derive(Debug, Clone)]
pub struct Embedded {
    pub parent: Group,
    pub group: Group,
    to_parent: Vec<usize>,
    from_parent: Vec<usize>,
}

impl Embedded {
    pub fn new(parent: &Group, members: &BitSet) -> Self {
        let to_parent: Vec<usize> = members.iter().collect();
        let mut from_parent = vec![usize::MAX; parent.order()];
        for (i, &x) in to_parent.iter().enumerate() {
            from_parent[x] = i;
        }
        let n = to_parent.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = parent.mul(to_parent[a], to_parent[b]);
                assert!(from_parent[c] != usize::MAX, "member set is not closed");
                table[a * n + b] = from_parent[c] as u32;
            }
        }
        let group = FiniteGroup::from_table_unchecked(n, table, format!("{} < {}", n, parent.label()));
        Embedded { parent: parent.clone(), group: Arc::new(group), to_parent, from_parent }
    }

    pub fn of_record(parent: &Group, h: &SubgroupRecord) -> Self {
        Self::new(parent, &h.members)
    }

    /// The whole group, embedded in itself.
    pub fn whole(g: &Group) -> Self {
        let n = g.order();
        Embedded { parent: g.clone(), group: g.clone(), to_parent: (0..n).collect(), from_parent: (0..n).collect() }
    }

    #[inline]
    pub fn to_parent(&self, local: usize) -> usize {
        self.to_parent[local]
    }

    /// Local index of a parent element, if it lies in the subgroup.
    #[inline]
    pub fn local(&self, x: usize) -> Option<usize> {
        match self.from_parent[x] {
            usize::MAX => None,
            i => Some(i),
        }
    }

    pub fn members(&self) -> BitSet {
        BitSet::from_indices(self.parent.order(), self.to_parent.iter().copied())
    }

    /// Re-embeds a subgroup of the parent that lies inside this subgroup.
    pub fn restrict_to(&self, k: &BitSet) -> Embedded {
        let local = BitSet::from_indices(
            self.group.order(),
            k.iter().map(|x| self.local(x).expect("not a subgroup of this embedding")),
        );
        Embedded::new(&self.group, &local)
    }
}
