//! Independent oracles shared by the integration suites. Nothing here calls
//! the library algorithm it is used to check.

#![allow(dead_code)]

pub mod suites;

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use grpcert::character::{Cyclotomic, Rational};
use grpcert::cli::GroupSpec;
use grpcert::group::{BitSet, Group};
use grpcert::zg::IntMatrix;

/// Catalog groups of order ≤ 243 used by the property suites.
pub const SMALL_CATALOG: &[&str] = &[
    "cyclic:2",
    "cyclic:3",
    "cyclic:9",
    "cyclic:27",
    "abelian:2,2",
    "abelian:3,3",
    "abelian:3,9",
    "abelian:3,3,3",
    "abelian:5,5",
    "extraspecial:3:3:3",
    "extraspecial:3:3:9",
    "modular:3:3",
    "modular:3:4",
    "extraspecial:5:3:5",
    "extraspecial:5:3:25",
    "product:extraspecial:3:3:3*cyclic:3",
    "centralproduct:extraspecial:3:3:3*cyclic:9",
    "product:modular:3:3*cyclic:3",
    "extraspecial:3:5:3",
    "product:extraspecial:3:3:3*cyclic:9",
    "product:extraspecial:3:3:3*abelian:3,3",
];

pub fn group(spec: &str) -> Group {
    let s: GroupSpec = spec.parse().expect("catalog spec parses");
    Arc::new(s.build(10_000).expect("catalog group builds"))
}

/// Closure of a generating set by repeated right multiplication.
pub fn naive_closure(g: &Group, gens: &[usize]) -> BTreeSet<usize> {
    let mut set = BTreeSet::from([0]);
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Every subgroup, found by joining single elements onto known subgroups
/// until nothing new appears.
pub fn brute_force_subgroups(g: &Group) -> HashSet<Vec<usize>> {
    let n = g.order();
    let key = |s: &BTreeSet<usize>| s.iter().copied().collect::<Vec<_>>();
    let trivial = BTreeSet::from([0]);
    let mut all: HashSet<Vec<usize>> = HashSet::from([key(&trivial)]);
    let mut layer: Vec<(BTreeSet<usize>, Vec<usize>)> = vec![(trivial, Vec::new())];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (h, gens) in &layer {
            for x in 0..n {
                if h.contains(&x) {
                    continue;
                }
                let mut with = gens.clone();
                with.push(x);
                let k = naive_closure(g, &with);
                if all.insert(key(&k)) {
                    next.push((k, with));
                }
            }
        }
        layer = next;
    }
    all
}

pub fn bitset_elements(b: &BitSet) -> Vec<usize> {
    b.iter().collect()
}

pub fn centralizer_order(g: &Group, set: &[usize]) -> usize {
    (0..g.order()).filter(|&x| set.iter().all(|&y| g.mul(x, y) == g.mul(y, x))).count()
}

/// ⟨χ, ψ⟩ summed element by element.
pub fn elementwise_inner(g: &Group, chi: impl Fn(usize) -> Cyclotomic, psi: impl Fn(usize) -> Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for x in 0..g.order() {
        acc += &(&chi(x) * &psi(x).conj());
    }
    acc.div_rational(Rational::from_integer(g.order() as i128))
}

/// Ind_H^G φ(x) = (1/|H|) Σ_{y ∈ G, y x y⁻¹ ∈ H} φ(y x y⁻¹), element by element.
pub fn naive_induce(g: &Group, h: &BTreeSet<usize>, phi: impl Fn(usize) -> Cyclotomic) -> Vec<Cyclotomic> {
    (0..g.order())
        .map(|x| {
            let mut acc = Cyclotomic::zero();
            for y in 0..g.order() {
                let c = g.mul(g.mul(y, x), g.inv(y));
                if h.contains(&c) {
                    acc += &phi(c);
                }
            }
            acc.div_rational(Rational::from_integer(h.len() as i128))
        })
        .collect()
}

/// Invariant factors in primary form, for comparing abelian group
/// descriptions that split torsion differently.
pub fn primary_parts(free: usize, torsion: &[i128]) -> (usize, Vec<i128>) {
    let mut out = Vec::new();
    for &t in torsion {
        let mut t = t.abs();
        let mut q = 2;
        while t > 1 {
            if t % q == 0 {
                let mut pk = 1;
                while t % q == 0 {
                    t /= q;
                    pk *= q;
                }
                out.push(pk);
            }
            q += 1;
        }
    }
    out.sort_unstable();
    (free, out)
}

/// Checks d∘d = 0 and that every boundary commutes with the matrices of
/// every group element (not just generators).
pub fn check_complex_elementwise(c: &grpcert::zg::GChainComplex) -> Result<(), String> {
    for (i, d) in c.boundaries.iter().enumerate() {
        let (src, dst) = (&c.modules[i + 1], &c.modules[i]);
        if d.rows() != dst.rank || d.cols() != src.rank {
            return Err(format!("d_{} has shape {}×{}", i + 1, d.rows(), d.cols()));
        }
        for x in 0..src.group.order() {
            if d.mul(src.matrix_of(x)) != dst.matrix_of(x).mul(d) {
                return Err(format!("d_{} does not commute with element {x}", i + 1));
            }
        }
    }
    for k in 1..c.boundaries.len() {
        let dd = c.boundaries[k - 1].mul(&c.boundaries[k]);
        if !dd.is_zero() {
            return Err(format!("d_{}∘d_{} ≠ 0", k, k + 1));
        }
    }
    Ok(())
}

/// Rank of an integer matrix by exact fraction-free elimination over ℚ.
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| Rational::from_integer(m.get(i, j))).collect()).collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != Rational::from_integer(0)) else { continue };
        a.swap(rank, piv);
        for r in 0..a.len() {
            if r != rank && a[r][col] != Rational::from_integer(0) {
                let f = a[r][col] / a[rank][col];
                for c in col..m.cols() {
                    let v = a[rank][c] * f;
                    a[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}
