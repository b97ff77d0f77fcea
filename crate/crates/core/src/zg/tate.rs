//! Tate cohomology in degrees −1 and 0, and the projectivity verdicts built
//! on it.

use rayon::prelude::*;
use serde::Serialize;

use super::complex::GChainComplex;
use super::lattice::GLattice;
use super::matrix::{kernel, smith, solve, IntMatrix};
use super::{Result, ZgError};
use crate::group::{all_subgroups, SubgroupRecord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TateReport {
    pub subgroup: Vec<usize>,
    pub subgroup_order: usize,
    /// Invariant factors of Ĥ⁻¹(H, M) (0 stands for a free ℤ summand).
    pub h_minus1: Vec<i128>,
    /// Invariant factors of Ĥ⁰(H, M).
    pub h_zero: Vec<i128>,
    pub projective: bool,
}

/// Invariant factors of ℤ^rows / colspan(a), with 0 for free summands.
fn cokernel_factors(a: &IntMatrix) -> Vec<i128> {
    let s = smith(a);
    let mut out = s.torsion();
    out.extend(std::iter::repeat_n(0, a.rows() - s.rank()));
    out
}

/// Ĥ⁰ = M^H / N·M and Ĥ⁻¹ = ker N / I_H·M. For a p-group H, both vanish iff
/// M is ℤ[H]-projective.
pub fn tate_01(h: &SubgroupRecord, m: &GLattice) -> TateReport {
    let n = m.rank;
    let id = IntMatrix::identity(n);
    let minus: Vec<IntMatrix> = h.generators.iter().map(|&x| m.matrix_of(x).sub(&id)).collect();
    let mut norm = IntMatrix::zeros(n, n);
    for x in h.elements() {
        norm = norm.add(m.matrix_of(x));
    }
    let fixed = if minus.is_empty() { id.clone() } else { kernel(&IntMatrix::vstack(&minus)) };
    let h_zero = if fixed.cols() == 0 {
        Vec::new()
    } else {
        cokernel_factors(&solve(&fixed, &norm).expect("N·M lies in the fixed lattice"))
    };
    let ker_n = kernel(&norm);
    let h_minus1 = if ker_n.cols() == 0 {
        Vec::new()
    } else if minus.is_empty() {
        cokernel_factors(&IntMatrix::zeros(ker_n.cols(), 0))
    } else {
        cokernel_factors(&solve(&ker_n, &IntMatrix::hstack(&minus)).expect("I_H·M lies in ker N"))
    };
    TateReport {
        subgroup: h.generators.clone(),
        subgroup_order: h.order,
        projective: h_minus1.is_empty() && h_zero.is_empty(),
        h_minus1,
        h_zero,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectivityCertificate {
    /// (degree, report) for every module and listed subgroup.
    pub reports: Vec<(usize, TateReport)>,
    pub all_projective: bool,
}

impl ProjectivityCertificate {
    pub fn failures(&self) -> impl Iterator<Item = &(usize, TateReport)> {
        self.reports.iter().filter(|(_, r)| !r.projective)
    }
}

/// Runs `tate_01` on every module of `c` against every listed subgroup.
pub fn projectivity_certificate(c: &GChainComplex, subgroups: &[SubgroupRecord]) -> ProjectivityCertificate {
    let pairs: Vec<(usize, usize)> = (0..c.modules.len()).flat_map(|d| (0..subgroups.len()).map(move |s| (d, s))).collect();
    let reports: Vec<(usize, TateReport)> =
        pairs.par_iter().map(|&(d, s)| (d, tate_01(&subgroups[s], &c.modules[d]))).collect();
    let all_projective = reports.iter().all(|(_, r)| r.projective);
    ProjectivityCertificate { reports, all_projective }
}

/// Checks ℤ[G/H] ⊗ M (diagonal action) over G, for M projective over H.
pub fn permutation_tensor_check(h: &SubgroupRecord, m: &GLattice) -> Result<TateReport> {
    let pre = tate_01(h, m);
    if !pre.projective {
        return Err(ZgError::PreconditionFailed(format!(
            "M is not projective over H (Ĥ⁻¹ {:?}, Ĥ⁰ {:?})",
            pre.h_minus1, pre.h_zero
        )));
    }
    let g = &m.group;
    let whole = all_subgroups(g)?
        .records()
        .iter()
        .find(|r| r.order == g.order())
        .expect("G is its own subgroup")
        .clone();
    let t = GLattice::permutation(g, h).tensor(m);
    Ok(tate_01(&whole, &t))
}
