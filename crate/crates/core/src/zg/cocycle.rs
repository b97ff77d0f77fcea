//! Surjective equivariant maps Ω̂ⁿℤ → ℤ and the truncated complexes C_ζ.

use serde::Serialize;

use super::complex::GChainComplex;
use super::lattice::GLattice;
use super::matrix::{gcd_all, hermite_rows, kernel, reduce_mod_hermite, IntMatrix};
use super::resolution::{syzygy, Resolution};
use super::{Result, ZgError};

/// An invariant functional on the syzygy basis of Ω̂ⁿℤ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    pub n: usize,
    pub values: Vec<i128>,
    pub is_coboundary: bool,
    /// Canonical representative of ±(class modulo coboundaries).
    pub class_key: Vec<i128>,
}

/// Row basis (Hermite form) of the functionals f with f·M_s = f for all s.
fn invariant_functionals(lattice: &GLattice) -> IntMatrix {
    let id = IntMatrix::identity(lattice.rank);
    let stacked = IntMatrix::vstack(&lattice.action.iter().map(|m| m.sub(&id).transpose()).collect::<Vec<_>>());
    let stacked = if lattice.action.is_empty() { IntMatrix::zeros(0, lattice.rank) } else { stacked };
    let k = kernel(&stacked);
    if k.cols() == 0 {
        return IntMatrix::zeros(0, lattice.rank);
    }
    hermite_rows(&k.transpose())
}

/// Hermite basis of the restrictions to Ω̂ⁿ of invariant functionals on P_{n−1}.
fn coboundary_lattice(res: &Resolution, n: usize, basis: &IntMatrix) -> IntMatrix {
    let inv = invariant_functionals(&res.complex.modules[n - 1]);
    if inv.rows() == 0 {
        return IntMatrix::zeros(0, basis.cols());
    }
    hermite_rows(&inv.mul(basis))
}

fn sign_class(v: &[i128], cob: &IntMatrix) -> (Vec<i128>, bool) {
    let plus = reduce_mod_hermite(v, cob);
    let neg: Vec<i128> = v.iter().map(|x| -x).collect();
    let minus = reduce_mod_hermite(&neg, cob);
    let zero = plus.iter().all(|&x| x == 0);
    (plus.min(minus), zero)
}

/// The canonical key of ±ζ̂ modulo coboundaries.
pub fn cocycle_class(res: &Resolution, n: usize, values: &[i128]) -> Result<Vec<i128>> {
    let syz = syzygy(res, n)?;
    if n == 0 {
        return Err(ZgError::PreconditionFailed("cocycles start in degree 1".into()));
    }
    Ok(sign_class(values, &coboundary_lattice(res, n, &syz.basis)).0)
}

/// Order 0, 1, −1, 2, −2, … on entries.
fn entry_key(x: i128) -> i128 {
    if x > 0 {
        2 * x - 1
    } else {
        -2 * x
    }
}

/// All invariant functionals on Ω̂ⁿℤ with entries in [−B, B] and gcd 1, one
/// per class modulo coboundaries and sign, in the order of their first
/// representative (entries compared as 0 < 1 < −1 < 2 < −2 …).
pub fn surjective_cocycles(res: &Resolution, n: usize, bound: i128) -> Result<Vec<Cocycle>> {
    if n == 0 {
        return Err(ZgError::PreconditionFailed("cocycles start in degree 1".into()));
    }
    let syz = syzygy(res, n)?;
    let inv = invariant_functionals(&syz.lattice);
    let cob = coboundary_lattice(res, n, &syz.basis);
    let mut found = Vec::new();
    let m = syz.lattice.rank;
    enumerate_box(&inv, 0, &mut vec![0; m], bound, &mut found);
    found.retain(|v| gcd_all(v) == 1);
    found.sort_by(|a, b| a.iter().map(|&x| entry_key(x)).cmp(b.iter().map(|&x| entry_key(x))));
    let mut out: Vec<Cocycle> = Vec::new();
    for v in found {
        let (key, is_coboundary) = sign_class(&v, &cob);
        if out.iter().all(|c| c.class_key != key) {
            out.push(Cocycle { n, values: v, is_coboundary, class_key: key });
        }
    }
    Ok(out)
}

/// Lattice points of the row span of the echelon basis `h` in [−B, B]^m.
fn enumerate_box(h: &IntMatrix, i: usize, v: &mut Vec<i128>, bound: i128, out: &mut Vec<Vec<i128>>) {
    if i == h.rows() {
        if v.iter().all(|x| x.abs() <= bound) {
            out.push(v.clone());
        }
        return;
    }
    let row = h.row(i).to_vec();
    let p = row.iter().position(|&x| x != 0).expect("Hermite rows are nonzero");
    let d = row[p];
    let lo = (-bound - v[p]).div_euclid(d) + i128::from((-bound - v[p]).rem_euclid(d) != 0);
    let hi = (bound - v[p]).div_euclid(d);
    for c in lo..=hi {
        for (x, &r) in v.iter_mut().zip(&row) {
            *x += c * r;
        }
        enumerate_box(h, i + 1, v, bound, out);
        for (x, &r) in v.iter_mut().zip(&row) {
            *x -= c * r;
        }
    }
}

/// C_ζ = (P_{n−1}/L_ζ → P_{n−2} → … → P_0) with L_ζ = ker ζ̂ ⊂ Ω̂ⁿℤ.
pub fn build_c_zeta(res: &Resolution, n: usize, values: &[i128]) -> Result<GChainComplex> {
    if n == 0 || n > res.length() + 1 {
        return Err(ZgError::PreconditionFailed(format!("C_ζ needs 1 ≤ n ≤ {}", res.length() + 1)));
    }
    let syz = syzygy(res, n)?;
    if values.len() != syz.lattice.rank {
        return Err(ZgError::PreconditionFailed(format!("ζ̂ has {} entries, Ω̂ⁿ has rank {}", values.len(), syz.lattice.rank)));
    }
    let g = gcd_all(values);
    if g != 1 {
        return Err(ZgError::NotSurjective(g));
    }
    let zeta = IntMatrix::row_vector(values);
    if let Some(s) = syz.lattice.action.iter().position(|m| zeta.mul(m) != zeta) {
        return Err(ZgError::NotEquivariant(s));
    }
    let l = syz.basis.mul(&kernel(&zeta));
    let q = res.complex.modules[n - 1].quotient(&l)?;
    let mut modules: Vec<GLattice> = res.complex.modules[..n - 1].to_vec();
    let mut boundaries: Vec<IntMatrix> = res.complex.boundaries[..n.saturating_sub(2)].to_vec();
    if n >= 2 {
        boundaries.push(res.complex.boundary(n - 1).mul(&q.lift));
    }
    modules.push(q.lattice);
    GChainComplex::new(modules, boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian, Group};
    use crate::zg::{free_resolution, AbelianGroup};
    use std::sync::Arc;

    #[test]
    fn cyclic_degree_two() {
        let g: Group = Arc::new(abelian(&[3]).unwrap());
        let r = free_resolution(&g, 2).unwrap();
        let cs = surjective_cocycles(&r, 2, 1).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].values, vec![1]);
        assert!(!cs[0].is_coboundary);
        let c = build_c_zeta(&r, 2, &[1]).unwrap();
        assert_eq!(c.ranks(), vec![3, 3]);
        assert_eq!(c.homology(), vec![AbelianGroup::free(1), AbelianGroup::free(1)]);
    }

    #[test]
    fn cyclic_odd_degree_has_only_coboundaries() {
        let g: Group = Arc::new(abelian(&[3]).unwrap());
        let r = free_resolution(&g, 3).unwrap();
        for n in [1, 3] {
            let cs = surjective_cocycles(&r, n, 1).unwrap();
            assert!(cs.iter().all(|c| c.is_coboundary), "n = {n}: {cs:?}");
        }
    }

    #[test]
    fn non_surjective_rejected() {
        let g: Group = Arc::new(abelian(&[3]).unwrap());
        let r = free_resolution(&g, 2).unwrap();
        assert!(matches!(build_c_zeta(&r, 2, &[3]), Err(ZgError::NotSurjective(3))));
    }

    #[test]
    fn enumeration_is_complete_in_the_box() {
        let h = IntMatrix::from_rows(&[vec![1, 2, 0], vec![0, 3, 1]]);
        let mut out = Vec::new();
        enumerate_box(&h, 0, &mut vec![0; 3], 2, &mut out);
        let mut brute = Vec::new();
        for a in -6i128..=6 {
            for b in -6i128..=6 {
                let v = vec![a, 2 * a + 3 * b, b];
                if v.iter().all(|x| x.abs() <= 2) {
                    brute.push(v);
                }
            }
        }
        out.sort();
        brute.sort();
        assert_eq!(out, brute);
    }
}
