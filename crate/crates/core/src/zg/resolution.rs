//! Free resolutions of ℤ over abelian groups, and their syzygies.

use super::complex::GChainComplex;
use super::lattice::{left_multiplication, GLattice};
use super::matrix::{kernel, smith, IntMatrix};
use super::{Result, ZgError};
use crate::group::Group;

/// An augmented free resolution P_n → … → P_0 → ℤ.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub complex: GChainComplex,
    /// ε: P_0 → ℤ as a 1 × rank(P_0) row.
    pub augmentation: IntMatrix,
    /// The compositions (n_1, …, n_k) labelling the ℤ[G] summands of each P_n.
    pub summands: Vec<Vec<Vec<usize>>>,
}

impl Resolution {
    pub fn group(&self) -> &Group {
        &self.complex.modules[0].group
    }

    pub fn length(&self) -> usize {
        self.complex.top_degree()
    }

    /// d_n for n ≥ 1, and ε for n = 0.
    pub fn boundary_or_augmentation(&self, n: usize) -> &IntMatrix {
        if n == 0 {
            &self.augmentation
        } else {
            self.complex.boundary(n)
        }
    }

    /// Exactness of the augmented complex, by rank and torsion accounting.
    pub fn verify_exact(&self) -> Result<()> {
        let mut maps: Vec<&IntMatrix> = vec![&self.augmentation];
        maps.extend(self.complex.boundaries.iter());
        let snfs: Vec<_> = maps.iter().map(|m| smith(m)).collect();
        if snfs[0].rank() != 1 || !snfs[0].torsion().is_empty() {
            return Err(ZgError::BadComplex("augmentation is not onto ℤ".into()));
        }
        for i in 0..self.length() {
            let (out, inc) = (&snfs[i], &snfs[i + 1]);
            if !maps[i].mul(maps[i + 1]).is_zero() {
                return Err(ZgError::BadComplex(format!("composite into degree {i} is nonzero")));
            }
            let rank = self.complex.modules[i].rank;
            if out.rank() + inc.rank() != rank || !inc.torsion().is_empty() {
                return Err(ZgError::BadComplex(format!("not exact at degree {i}")));
            }
        }
        Ok(())
    }
}

/// Tensor product of the 2-periodic resolutions of the cyclic factors. The
/// degree-n module has one ℤ[G] summand per composition of n into k parts,
/// and d(e_c) = Σ_t (−1)^{c_1+…+c_{t−1}} ∂_t e_{c−e_t}, where ∂_t is g_t − 1
/// for odd c_t and the norm of ⟨g_t⟩ for even c_t.
pub fn free_resolution(g: &Group, length: usize) -> Result<Resolution> {
    let (moduli, coords) = g
        .cyclic_coords()
        .ok_or_else(|| ZgError::UnsupportedGroup(g.label().to_string()))?
        .clone();
    let n = g.order();
    let k = moduli.len();
    let element_of = |c: &[usize]| coords.iter().position(|x| x == c).expect("coordinates cover the group");
    let mut factor_gen = Vec::new();
    for t in 0..k {
        let mut e = vec![0; k];
        e[t] = 1 % moduli[t];
        factor_gen.push(element_of(&e));
    }
    let id = IntMatrix::identity(n);
    let minus_one: Vec<IntMatrix> = factor_gen.iter().map(|&s| left_multiplication(g, s).sub(&id)).collect();
    let norms: Vec<IntMatrix> = factor_gen
        .iter()
        .zip(&moduli)
        .map(|(&s, &m)| {
            let l = left_multiplication(g, s);
            let mut acc = IntMatrix::zeros(n, n);
            let mut p = IntMatrix::identity(n);
            for _ in 0..m {
                acc = acc.add(&p);
                p = l.mul(&p);
            }
            acc
        })
        .collect();

    let summands: Vec<Vec<Vec<usize>>> = (0..=length).map(|d| compositions(d, k)).collect();
    let modules: Vec<GLattice> = summands.iter().map(|s| free_module(g, s.len())).collect();
    let mut boundaries = Vec::new();
    for d in 1..=length {
        let mut m = IntMatrix::zeros(n * summands[d - 1].len(), n * summands[d].len());
        for (col, c) in summands[d].iter().enumerate() {
            let mut sign = 1;
            for t in 0..k {
                if c[t] > 0 {
                    let mut target = c.clone();
                    target[t] -= 1;
                    let row = summands[d - 1].iter().position(|x| *x == target).expect("composition exists");
                    let op = if c[t] % 2 == 1 { &minus_one[t] } else { &norms[t] };
                    m.paste(row * n, col * n, &op.scale(sign));
                }
                if c[t] % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        boundaries.push(m);
    }
    let augmentation = IntMatrix::from_fn(1, n * summands[0].len(), |_, _| 1);
    let res = Resolution { complex: GChainComplex { modules, boundaries }, augmentation, summands };
    res.complex.validate()?;
    res.verify_exact()?;
    Ok(res)
}

/// ℤ[G]^count, summand-major basis.
pub fn free_module(g: &Group, count: usize) -> GLattice {
    GLattice::from_element_fn(g, g.order() * count, |s| {
        let l = left_multiplication(g, s);
        IntMatrix::direct_sum(&vec![l; count])
    })
}

/// Compositions of `n` into `k` non-negative parts, in decreasing
/// lexicographic order.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Ω̂ⁿℤ as a sublattice of P_{n−1}, or ℤ itself when n = 0.
#[derive(Debug, Clone)]
pub struct Syzygy {
    pub n: usize,
    pub lattice: GLattice,
    /// Columns: the lattice basis inside P_{n−1} (1×1 identity when n = 0).
    pub basis: IntMatrix,
}

/// The kernel of d_{n−1} (with d_{−1} = ε), in column Hermite basis.
pub fn syzygy(res: &Resolution, n: usize) -> Result<Syzygy> {
    if n == 0 {
        return Ok(Syzygy { n, lattice: GLattice::trivial(res.group(), 1), basis: IntMatrix::identity(1) });
    }
    if n > res.length() + 1 {
        return Err(ZgError::PreconditionFailed(format!("syzygy {n} needs a resolution of length ≥ {}", n - 1)));
    }
    let basis = kernel(res.boundary_or_augmentation(n - 1));
    let lattice = res.complex.modules[n - 1].sublattice(&basis)?;
    Ok(Syzygy { n, lattice, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelian;
    use std::sync::Arc;

    #[test]
    fn cyclic_resolution() {
        let g: Group = Arc::new(abelian(&[3]).unwrap());
        let r = free_resolution(&g, 2).unwrap();
        assert_eq!(r.complex.ranks(), vec![3, 3, 3]);
        let norm = r.complex.boundary(2);
        assert!((0..3).all(|i| (0..3).all(|j| norm.get(i, j) == 1)));
    }

    #[test]
    fn rank_two_resolution() {
        let g: Group = Arc::new(abelian(&[3, 3]).unwrap());
        let r = free_resolution(&g, 3).unwrap();
        assert_eq!(r.complex.ranks(), vec![9, 18, 27, 36]);
    }

    #[test]
    fn trivial_group_resolution() {
        let g: Group = Arc::new(abelian(&[]).unwrap());
        let r = free_resolution(&g, 0).unwrap();
        assert_eq!(r.complex.ranks(), vec![1]);
        assert!(free_resolution(&g, 1).is_ok_and(|r| r.complex.ranks() == vec![1, 0]));
    }

    #[test]
    fn syzygy_ranks() {
        let c3: Group = Arc::new(abelian(&[3]).unwrap());
        let r = free_resolution(&c3, 2).unwrap();
        let s = syzygy(&r, 2).unwrap();
        assert_eq!(s.lattice.rank, 1);
        assert!(s.lattice.action.iter().all(|m| m.is_identity()));
        assert_eq!(syzygy(&r, 0).unwrap().lattice.rank, 1);
        let e: Group = Arc::new(abelian(&[3, 3]).unwrap());
        let r = free_resolution(&e, 2).unwrap();
        assert_eq!(syzygy(&r, 2).unwrap().lattice.rank, 10);
        assert_eq!(syzygy(&r, 1).unwrap().lattice.rank, 8);
    }
}
