use std::sync::Arc;

use super::cyclotomic::{Cyclotomic, Rational};
use super::table::character_table;
use super::{CharError, Result};
use crate::group::{all_subgroups, BitSet, Embedded, Group};

/// A function on a group that is constant on conjugacy classes; one value
/// per class, in class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Group,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: &Group, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), group.classes().len(), "one value per conjugacy class");
        ClassFunction { group: group.clone(), values }
    }

    /// Evaluates `f` on class representatives. `f` must be a class function.
    pub fn from_fn(group: &Group, f: impl Fn(usize) -> Cyclotomic) -> Self {
        let values = group.classes().representatives.iter().map(|&x| f(x)).collect();
        ClassFunction { group: group.clone(), values }
    }

    pub fn from_integers(group: &Group, values: &[i128]) -> Self {
        Self::new(group, values.iter().map(|&v| Cyclotomic::from_int(v)).collect())
    }

    pub fn zero(group: &Group) -> Self {
        Self::from_fn(group, |_| Cyclotomic::zero())
    }

    pub fn trivial(group: &Group) -> Self {
        Self::from_fn(group, |_| Cyclotomic::one())
    }

    pub fn regular(group: &Group) -> Self {
        let n = group.order() as i128;
        Self::from_fn(group, |x| Cyclotomic::from_int(if x == 0 { n } else { 0 }))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value on a conjugacy class.
    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value on an element.
    pub fn at(&self, x: usize) -> &Cyclotomic {
        &self.values[self.group.classes().class_of[x]]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    fn same_group(&self, other: &Self) {
        assert!(Arc::ptr_eq(&self.group, &other.group), "class functions on different groups");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_group(other);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        ClassFunction { group: self.group.clone(), values }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_group(other);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        ClassFunction { group: self.group.clone(), values }
    }

    /// Pointwise product (tensor product of characters).
    pub fn mul(&self, other: &Self) -> Self {
        self.same_group(other);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        ClassFunction { group: self.group.clone(), values }
    }

    pub fn scale(&self, r: Rational) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.scale(r)).collect() }
    }

    pub fn scale_int(&self, n: i128) -> Self {
        self.scale(Rational::from_integer(n))
    }

    pub fn conj(&self) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(Cyclotomic::conj).collect() }
    }

    /// The integer values, when every value is a rational integer.
    pub fn integer_values(&self) -> Option<Vec<i128>> {
        self.values.iter().map(Cyclotomic::as_integer).collect()
    }

    /// Complex dimension of the fixed subspace of a subgroup of the group,
    /// `(1/|H|) Σ_{h∈H} χ(h)`.
    pub fn fixed_dimension(&self, members: &BitSet) -> Cyclotomic {
        let mut s = Cyclotomic::zero();
        let mut count = 0i128;
        for h in members.iter() {
            s += self.at(h);
            count += 1;
        }
        s.div_rational(Rational::from_integer(count))
    }
}

pub fn restrict(chi: &ClassFunction, h: &Embedded) -> Result<ClassFunction> {
    if !Arc::ptr_eq(&chi.group, &h.parent) {
        return Err(CharError::GroupMismatch);
    }
    Ok(ClassFunction::from_fn(&h.group, |x| chi.at(h.to_parent(x)).clone()))
}

/// Ind_H^G φ, with `Ind(φ)(g) = |C_G(g)|/|H| · Σ_{y ∈ g^G ∩ H} φ(y)`.
pub fn induce(phi: &ClassFunction, h: &Embedded) -> Result<ClassFunction> {
    if !Arc::ptr_eq(&phi.group, &h.group) {
        return Err(CharError::GroupMismatch);
    }
    let g = &h.parent;
    let cl = g.classes();
    let values = (0..cl.len())
        .map(|c| {
            let mut s = Cyclotomic::zero();
            for &y in cl.members(c) {
                if let Some(l) = h.local(y) {
                    s += phi.at(l);
                }
            }
            let factor = Rational::new(g.order() as i128, (h.group.order() * cl.class_sizes[c]) as i128);
            s.scale(factor)
        })
        .collect();
    Ok(ClassFunction::new(g, values))
}

/// `(1/|G|) Σ_g χ(g) conj(ψ(g))`.
pub fn inner_product(chi: &ClassFunction, psi: &ClassFunction) -> Cyclotomic {
    chi.same_group(psi);
    let cl = chi.group.classes();
    let mut s = Cyclotomic::zero();
    for c in 0..cl.len() {
        let term = &chi.values[c] * &psi.values[c].conj();
        s += &term.scale(Rational::from_integer(cl.class_sizes[c] as i128));
    }
    s.div_rational(Rational::from_integer(chi.group.order() as i128))
}

/// Multiplicities of a class function against the irreducible characters.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub multiplicities: Vec<Cyclotomic>,
    pub is_character: bool,
    /// Index of the first irreducible whose multiplicity is not a
    /// non-negative integer, with that multiplicity.
    pub witness: Option<(usize, Cyclotomic)>,
}

impl Decomposition {
    pub fn integer_multiplicities(&self) -> Option<Vec<u64>> {
        self.multiplicities.iter().map(|m| m.as_integer().filter(|&v| v >= 0).map(|v| v as u64)).collect()
    }
}

pub fn decompose(chi: &ClassFunction) -> Result<Decomposition> {
    let table = character_table(&chi.group)?;
    let multiplicities: Vec<Cyclotomic> =
        table.irreducibles(&chi.group).iter().map(|irr| inner_product(chi, irr)).collect();
    let witness = multiplicities
        .iter()
        .position(|m| !m.as_integer().is_some_and(|v| v >= 0))
        .map(|i| (i, multiplicities[i].clone()));
    Ok(Decomposition { is_character: witness.is_none(), multiplicities, witness })
}

pub fn is_character(chi: &ClassFunction) -> Result<bool> {
    Ok(decompose(chi)?.is_character)
}

fn require_character(chi: &ClassFunction) -> Result<()> {
    let d = decompose(chi)?;
    match d.witness {
        None => Ok(()),
        Some((index, m)) => Err(CharError::NotACharacter { irreducible: index, multiplicity: m.to_string() }),
    }
}

/// Outcome of a fixed-point-freeness test, with the first offending
/// element or subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpfVerdict {
    pub holds: bool,
    /// Members of the offending subgroup (or the cyclic subgroup of the
    /// offending element), as indices in the character's group.
    pub witness: Option<Vec<usize>>,
    pub fixed_dimension: Option<i128>,
}

impl FpfVerdict {
    fn ok() -> Self {
        FpfVerdict { holds: true, witness: None, fixed_dimension: None }
    }
}

fn cyclic_members(g: &Group, x: usize) -> BitSet {
    let mut m = BitSet::new(g.order());
    let mut y = 0;
    loop {
        m.insert(y);
        y = g.mul(y, x);
        if y == 0 {
            break m;
        }
    }
}

/// No nonidentity element fixes a nonzero vector.
pub fn is_strictly_fpf(chi: &ClassFunction) -> Result<FpfVerdict> {
    require_character(chi)?;
    let g = &chi.group;
    for &x in g.classes().representatives.iter().skip(1) {
        let c = cyclic_members(g, x);
        let n = chi.fixed_dimension(&c);
        if !n.is_zero() {
            return Ok(FpfVerdict {
                holds: false,
                witness: Some(c.iter().collect()),
                fixed_dimension: n.as_integer(),
            });
        }
    }
    Ok(FpfVerdict::ok())
}

/// Every elementary abelian subgroup of rank `r` has zero fixed subspace.
pub fn is_top_rank_fpf(chi: &ClassFunction, r: usize) -> Result<FpfVerdict> {
    require_character(chi)?;
    let g = &chi.group;
    let lattice = all_subgroups(g)?;
    for h in lattice.class_representatives() {
        if !(h.is_elementary_abelian && h.rank == r) {
            continue;
        }
        let n = chi.fixed_dimension(&h.members);
        if !n.is_zero() {
            return Ok(FpfVerdict {
                holds: false,
                witness: Some(h.members.iter().collect()),
                fixed_dimension: n.as_integer(),
            });
        }
    }
    Ok(FpfVerdict::ok())
}

/// `n(H)` for each subgroup conjugacy class of the group.
#[derive(Clone, Debug)]
pub struct DimensionFunction {
    group: Group,
    /// Indexed by subgroup class id.
    values: Vec<u64>,
}

impl DimensionFunction {
    pub fn group(&self) -> &Group {
        &self.group
    }

    /// n(H) for the subgroup conjugacy class `class_id`.
    pub fn n_class(&self, class_id: usize) -> u64 {
        self.values[class_id]
    }

    /// n(H) for any subgroup given by its members.
    pub fn n(&self, members: &BitSet) -> u64 {
        let l = all_subgroups(&self.group).expect("lattice computed at construction");
        let r = l.find(members).expect("not a subgroup");
        self.values[r.class_id]
    }

    /// Fixed-sphere dimension data for the r-fold join: `r·n + r − 1`.
    pub fn n_r(&self, members: &BitSet, r: u64) -> u64 {
        r * self.n(members) + r - 1
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

pub fn dimension_function(chi: &ClassFunction) -> Result<DimensionFunction> {
    require_character(chi)?;
    let lattice = all_subgroups(&chi.group)?;
    let values = lattice
        .class_representatives()
        .into_iter()
        .map(|h| {
            let n = chi.fixed_dimension(&h.members);
            n.as_integer().expect("fixed dimension of a character is an integer") as u64
        })
        .collect();
    Ok(DimensionFunction { group: chi.group.clone(), values })
}

/// Regular character minus the trivial character.
pub fn reduced_regular(g: &Group) -> ClassFunction {
    ClassFunction::regular(g).sub(&ClassFunction::trivial(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::character_table;
    use crate::group::{abelian, center, extraspecial, group_from_permutations, subgroup_closure, Embedded};
    use std::sync::Arc;

    fn q(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn c3_table_and_decomposition() {
        let g = Arc::new(abelian(&[3]).unwrap());
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1]);
        let d = decompose(&ClassFunction::regular(&g)).unwrap();
        assert!(d.is_character);
        assert_eq!(d.integer_multiplicities().unwrap(), vec![1, 1, 1]);
        let f = ClassFunction::from_integers(&g, &[1, 1, 0]);
        let d = decompose(&f).unwrap();
        assert!(!d.is_character);
        assert_eq!(d.multiplicities[0].as_rational(), Some(q(2, 3)));
    }

    #[test]
    fn extraspecial_27_faithful_characters() {
        let g = Arc::new(extraspecial(3, 3, 3).unwrap());
        let t = character_table(&g).unwrap();
        let mut degs = t.degrees().to_vec();
        degs.sort();
        assert_eq!(degs, [vec![1; 9], vec![3, 3]].concat());
        let z = center(&g);
        for chi in t.irreducibles(&g).into_iter().filter(|c| c.degree().as_integer() == Some(3)) {
            for x in 0..g.order() {
                if !z.contains(x) {
                    assert!(chi.at(x).is_zero());
                } else if x != 0 {
                    let v = chi.at(x).div_rational(q(3, 1));
                    assert_eq!(v.conductor(), 3);
                    assert!(v == Cyclotomic::root_of_unity(3, 1) || v == Cyclotomic::root_of_unity(3, 2));
                }
            }
        }
    }

    #[test]
    fn s3_degrees() {
        let g = Arc::new(group_from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap());
        assert_eq!(character_table(&g).unwrap().degrees(), &[1, 1, 2]);
    }

    #[test]
    fn restriction_and_induction() {
        let g = Arc::new(extraspecial(3, 3, 3).unwrap());
        let z = Embedded::of_record(&g, &center(&g));
        let zt = character_table(&z.group).unwrap();
        let faithful = zt.irreducible(&z.group, 1);
        let ind = induce(&faithful, &z).unwrap();
        let d = decompose(&ind).unwrap();
        let m = d.integer_multiplicities().unwrap();
        assert_eq!(m.iter().sum::<u64>(), 3);
        assert_eq!(m.iter().filter(|&&x| x > 0).count(), 1);
        let reg = ClassFunction::regular(&g);
        let res = restrict(&reg, &z).unwrap();
        assert_eq!(res, ClassFunction::regular(&z.group).scale_int(9));
        let triv = induce(&ClassFunction::trivial(&z.group), &z).unwrap();
        assert_eq!(triv.degree().as_integer(), Some(9));
    }

    #[test]
    fn fpf_predicates() {
        let c3 = Arc::new(abelian(&[3]).unwrap());
        assert!(is_strictly_fpf(&reduced_regular(&c3)).unwrap().holds);
        assert!(!is_strictly_fpf(&ClassFunction::trivial(&c3)).unwrap().holds);
        let e = Arc::new(abelian(&[3, 3]).unwrap());
        let rr = reduced_regular(&e);
        let v = is_strictly_fpf(&rr).unwrap();
        assert!(!v.holds);
        assert_eq!(v.fixed_dimension, Some(2));
        assert!(is_top_rank_fpf(&rr, 2).unwrap().holds);
        assert!(!is_top_rank_fpf(&ClassFunction::trivial(&e), 1).unwrap().holds);
        let bad = ClassFunction::from_integers(&c3, &[1, 1, 0]);
        assert!(matches!(is_strictly_fpf(&bad), Err(CharError::NotACharacter { .. })));
    }

    #[test]
    fn dimension_functions() {
        let g = Arc::new(extraspecial(3, 3, 3).unwrap());
        let t = character_table(&g).unwrap();
        let chi = t.irreducibles(&g).into_iter().find(|c| c.degree().as_integer() == Some(3)).unwrap();
        let df = dimension_function(&chi).unwrap();
        let z = center(&g);
        assert_eq!(df.n(&z.members), 0);
        let x = (1..27).find(|&x| !z.contains(x)).unwrap();
        let h = subgroup_closure(&g, &[x]);
        assert_eq!(df.n(&h), 1);
        assert_eq!(df.n_r(&h, 2), 3);
        let reg = dimension_function(&ClassFunction::regular(&g)).unwrap();
        assert_eq!(reg.n(&h), 9);
        assert_eq!(reg.n(&BitSet::from_indices(27, [0])), 27);
    }

    #[test]
    fn reduced_regular_decomposition() {
        let a = Arc::new(abelian(&[3, 3]).unwrap());
        let rr = reduced_regular(&a);
        assert_eq!(rr.integer_values().unwrap()[0], 8);
        let m = decompose(&rr).unwrap().integer_multiplicities().unwrap();
        assert_eq!(m[0], 0);
        assert!(m[1..].iter().all(|&x| x == 1));
    }
}
