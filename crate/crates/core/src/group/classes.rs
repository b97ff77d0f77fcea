use super::FiniteGroup;

/// Conjugacy classes, numbered in order of their least element.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ClassPartition {
    pub(crate) fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let gens = g.generators().to_vec();
        let mut class_of = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        let mut members = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            let mut orbit = vec![x];
            class_of[x] = id;
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for &s in &gens {
                    let z = g.conj(s, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            representatives.push(x);
            members.push(orbit);
        }
        let class_sizes = members.iter().map(Vec::len).collect();
        ClassPartition { class_of, representatives, class_sizes, members }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{cyclic, extraspecial, modular};

    #[test]
    fn class_counts() {
        let c3 = cyclic(3).unwrap();
        assert_eq!(c3.classes().len(), 3);

        let e = extraspecial(3, 3, 3).unwrap();
        let cl = e.classes();
        assert_eq!(cl.len(), 11);
        let singletons = cl.class_sizes.iter().filter(|&&s| s == 1).count();
        assert_eq!(singletons, 3);
        assert_eq!(cl.class_sizes.iter().filter(|&&s| s == 3).count(), 8);

        let m = modular(3, 3).unwrap();
        assert_eq!(m.classes().len(), 11);
    }

    #[test]
    fn classes_match_exhaustive_conjugation() {
        let g = modular(3, 4).unwrap();
        let cl = g.classes();
        for x in 0..g.order() {
            for y in 0..g.order() {
                assert_eq!(cl.class_of[g.conj(y, x)], cl.class_of[x]);
            }
        }
        assert_eq!(cl.class_sizes.iter().sum::<usize>(), g.order());
        assert!(cl.class_sizes.iter().all(|s| g.order().is_multiple_of(*s)));
    }
}
