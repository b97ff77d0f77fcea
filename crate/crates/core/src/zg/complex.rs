//! Bounded chain complexes of G-lattices in degrees 0..=top.

use std::fmt;

use serde::Serialize;

use super::lattice::GLattice;
use super::matrix::{smith, IntMatrix};
use super::{Result, ZgError};

/// `modules[i]` sits in degree i; `boundaries[i - 1]` is d_i: C_i → C_{i−1}.
#[derive(Debug, Clone)]
pub struct GChainComplex {
    pub modules: Vec<GLattice>,
    pub boundaries: Vec<IntMatrix>,
}

/// A finitely generated abelian group ℤ^free ⊕ ⊕ ℤ/t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<i128>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl GChainComplex {
    /// Checks d∘d = 0 and equivariance before accepting.
    pub fn new(modules: Vec<GLattice>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        let c = GChainComplex { modules, boundaries };
        c.validate()?;
        Ok(c)
    }

    /// A single lattice in degree 0.
    pub fn concentrated(m: GLattice) -> Self {
        GChainComplex { modules: vec![m], boundaries: Vec::new() }
    }

    pub fn top_degree(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank).collect()
    }

    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n - 1]
    }

    pub fn validate(&self) -> Result<()> {
        if self.modules.is_empty() || self.boundaries.len() + 1 != self.modules.len() {
            return Err(ZgError::BadComplex("one boundary per positive degree is required".into()));
        }
        for (i, d) in self.boundaries.iter().enumerate() {
            let (src, dst) = (&self.modules[i + 1], &self.modules[i]);
            if d.rows() != dst.rank || d.cols() != src.rank {
                return Err(ZgError::BadComplex(format!("d_{} has the wrong shape", i + 1)));
            }
            if !src.is_equivariant_map(dst, d) {
                return Err(ZgError::BadComplex(format!("d_{} is not equivariant", i + 1)));
            }
        }
        for w in self.boundaries.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return Err(ZgError::BadComplex("d∘d ≠ 0".into()));
            }
        }
        Ok(())
    }

    /// Integral homology in every degree, by Smith normal form.
    pub fn homology(&self) -> Vec<AbelianGroup> {
        let snfs: Vec<_> = self.boundaries.iter().map(smith).collect();
        (0..self.modules.len())
            .map(|i| {
                let rank_out = if i == 0 { 0 } else { snfs[i - 1].rank() };
                let (rank_in, torsion) = match snfs.get(i) {
                    Some(s) => (s.rank(), s.torsion()),
                    None => (0, Vec::new()),
                };
                AbelianGroup { free_rank: self.modules[i].rank - rank_out - rank_in, torsion }
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.modules.iter().enumerate().map(|(i, m)| if i % 2 == 0 { m.rank as i64 } else { -(m.rank as i64) }).sum()
    }
}

/// Total complex of A ⊗ B with diagonal action and the Koszul sign
/// d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db. The degree-k module lists the
/// summands A_i ⊗ B_{k−i} in increasing i.
pub fn tensor_complexes(a: &GChainComplex, b: &GChainComplex) -> GChainComplex {
    let top = a.top_degree() + b.top_degree();
    let summands = |k: usize| -> Vec<(usize, usize)> {
        (0..=k.min(a.top_degree())).filter(|&i| k - i <= b.top_degree()).map(|i| (i, k - i)).collect()
    };
    let offsets = |k: usize| -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        summands(k)
            .into_iter()
            .map(|(i, j)| {
                let o = off;
                off += a.modules[i].rank * b.modules[j].rank;
                (i, j, o)
            })
            .collect()
    };
    let modules: Vec<GLattice> = (0..=top)
        .map(|k| {
            let parts: Vec<GLattice> = summands(k).into_iter().map(|(i, j)| a.modules[i].tensor(&b.modules[j])).collect();
            GLattice::direct_sum(&parts)
        })
        .collect();
    let mut boundaries = Vec::new();
    for k in 1..=top {
        let mut d = IntMatrix::zeros(modules[k - 1].rank, modules[k].rank);
        let targets = offsets(k - 1);
        let find = |i: usize, j: usize| targets.iter().find(|t| t.0 == i && t.1 == j).map(|t| t.2);
        for (i, j, src) in offsets(k) {
            if i > 0 {
                let block = a.boundary(i).kron(&IntMatrix::identity(b.modules[j].rank));
                d.paste(find(i - 1, j).expect("summand exists"), src, &block);
            }
            if j > 0 {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let block = IntMatrix::identity(a.modules[i].rank).kron(b.boundary(j)).scale(sign);
                d.paste(find(i, j - 1).expect("summand exists"), src, &block);
            }
        }
        boundaries.push(d);
    }
    GChainComplex { modules, boundaries }
}
