//! ℤ-free modules over a group ring, given by one matrix per generator.

use std::sync::{Arc, OnceLock};

use super::matrix::{is_unimodular, kernel, left_inverse, smith, IntMatrix};
use super::{Result, ZgError};
use crate::group::{Group, SubgroupRecord};

/// A left ℤ[G]-lattice. `action[i]` is the matrix of `group.generators()[i]`
/// acting on column vectors.
#[derive(Debug, Clone)]
pub struct GLattice {
    pub group: Group,
    pub rank: usize,
    pub action: Vec<IntMatrix>,
    pub basis_labels: Option<Vec<String>>,
    elements: Arc<OnceLock<Vec<IntMatrix>>>,
}

impl GLattice {
    /// Validates unimodularity and the group relations before accepting.
    pub fn new(group: &Group, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        let lattice = Self::new_unchecked(group, rank, action);
        lattice.validate()?;
        Ok(lattice)
    }

    pub(crate) fn new_unchecked(group: &Group, rank: usize, action: Vec<IntMatrix>) -> Self {
        GLattice { group: group.clone(), rank, action, basis_labels: None, elements: Arc::default() }
    }

    /// Lattice with the same action on every generator matrix computed from
    /// an element-indexed function.
    pub(crate) fn from_element_fn(group: &Group, rank: usize, f: impl Fn(usize) -> IntMatrix) -> Self {
        let action = group.generators().iter().map(|&s| f(s)).collect();
        Self::new_unchecked(group, rank, action)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.basis_labels = Some(labels);
        self
    }

    /// Checks that generator matrices are unimodular and extend to a
    /// homomorphism G → GL_n(ℤ).
    pub fn validate(&self) -> Result<()> {
        let gens = self.group.generators();
        if self.action.len() != gens.len() {
            return Err(ZgError::BadLattice(format!("{} matrices for {} generators", self.action.len(), gens.len())));
        }
        for (i, m) in self.action.iter().enumerate() {
            if m.rows() != self.rank || m.cols() != self.rank {
                return Err(ZgError::BadLattice(format!("generator {i} matrix is not {0}×{0}", self.rank)));
            }
            if !is_unimodular(m) {
                return Err(ZgError::BadLattice(format!("generator {i} matrix has determinant other than ±1")));
            }
        }
        self.try_element_matrices().map(|_| ())
    }

    fn try_element_matrices(&self) -> Result<Vec<IntMatrix>> {
        let g = &self.group;
        let gens = g.generators();
        let mut mats: Vec<Option<IntMatrix>> = vec![None; g.order()];
        mats[0] = Some(IntMatrix::identity(self.rank));
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let m = mats[x].as_ref().unwrap().mul(&self.action[k]);
                match &mats[y] {
                    Some(existing) if *existing != m => {
                        return Err(ZgError::BadLattice(format!(
                            "relation fails: element {x} times generator {s} disagrees with element {y}"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        mats[y] = Some(m);
                        queue.push(y);
                    }
                }
            }
        }
        Ok(mats.into_iter().map(|m| m.expect("generators generate")).collect())
    }

    /// The matrix of every group element, by element index.
    pub fn element_matrices(&self) -> &[IntMatrix] {
        self.elements.get_or_init(|| self.try_element_matrices().expect("validated lattice"))
    }

    pub fn matrix_of(&self, x: usize) -> &IntMatrix {
        &self.element_matrices()[x]
    }

    /// ℤ^n with trivial action.
    pub fn trivial(group: &Group, rank: usize) -> Self {
        Self::from_element_fn(group, rank, |_| IntMatrix::identity(rank))
    }

    /// ℤ[G], basis the group elements, g·e_x = e_{gx}.
    pub fn regular(group: &Group) -> Self {
        let n = group.order();
        Self::from_element_fn(group, n, |s| left_multiplication(group, s))
            .with_labels((0..n).map(|x| format!("e{x}")).collect())
    }

    /// ℤ[G/H], basis the left cosets xH ordered by least element.
    pub fn permutation(group: &Group, h: &SubgroupRecord) -> Self {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] == usize::MAX {
                for y in h.elements() {
                    coset_of[group.mul(x, y)] = reps.len();
                }
                reps.push(x);
            }
        }
        let k = reps.len();
        Self::from_element_fn(group, k, |s| {
            let mut m = IntMatrix::zeros(k, k);
            for (c, &x) in reps.iter().enumerate() {
                m.set(coset_of[group.mul(s, x)], c, 1);
            }
            m
        })
        .with_labels(reps.iter().map(|x| format!("{x}H")).collect())
    }

    /// The kernel of the augmentation ℤ[G] → ℤ.
    pub fn augmentation_ideal(group: &Group) -> Self {
        let eps = IntMatrix::from_fn(1, group.order(), |_, _| 1);
        Self::regular(group).sublattice(&kernel(&eps)).expect("kernel of an equivariant map is invariant")
    }

    /// Diagonal action on the tensor product; basis e_i ⊗ f_j at `i·rank(b) + j`.
    pub fn tensor(&self, other: &GLattice) -> GLattice {
        assert!(Arc::ptr_eq(&self.group, &other.group), "tensor of lattices over different groups");
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.kron(b)).collect();
        Self::new_unchecked(&self.group, self.rank * other.rank, action)
    }

    pub fn direct_sum(parts: &[GLattice]) -> GLattice {
        let group = parts[0].group.clone();
        let ngens = group.generators().len();
        let action = (0..ngens).map(|k| IntMatrix::direct_sum(&parts.iter().map(|p| p.action[k].clone()).collect::<Vec<_>>())).collect();
        Self::new_unchecked(&group, parts.iter().map(|p| p.rank).sum(), action)
    }

    /// The invariant sublattice spanned by the (saturated) columns of `basis`,
    /// with the action rewritten in that basis.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<GLattice> {
        let li = left_inverse(basis).ok_or_else(|| ZgError::BadLattice("sublattice basis is not saturated".into()))?;
        let mut action = Vec::new();
        for m in &self.action {
            let img = m.mul(basis);
            let x = li.mul(&img);
            if basis.mul(&x) != img {
                return Err(ZgError::BadLattice("sublattice is not invariant".into()));
            }
            action.push(x);
        }
        Ok(Self::new_unchecked(&self.group, basis.cols(), action))
    }

    /// The quotient by an invariant saturated sublattice. Returns the
    /// quotient and the matrix `lift` (self.rank × quotient rank) whose
    /// columns map onto the quotient basis, together with the projection.
    pub fn quotient(&self, basis: &IntMatrix) -> Result<Quotient> {
        let s = smith(basis);
        let l = basis.cols();
        if s.rank() != l || s.diagonal.iter().any(|&d| d != 1) {
            return Err(ZgError::BadLattice("quotient by a non-saturated sublattice".into()));
        }
        let n = self.rank;
        let project = s.u.submatrix(l..n, 0..n);
        let lift = s.u_inv.submatrix(0..n, l..n);
        let mut action = Vec::new();
        for m in &self.action {
            let conj = s.u.mul(m).mul(&s.u_inv);
            if !conj.submatrix(l..n, 0..l).is_zero() {
                return Err(ZgError::BadLattice("quotient by a non-invariant sublattice".into()));
            }
            action.push(conj.submatrix(l..n, l..n));
        }
        Ok(Quotient { lattice: Self::new_unchecked(&self.group, n - l, action), project, lift })
    }

    /// The restriction to a subgroup, as matrices of the subgroup's own
    /// elements (by parent index).
    pub fn restricted_matrices(&self, h: &SubgroupRecord) -> Vec<&IntMatrix> {
        h.generators.iter().map(|&x| self.matrix_of(x)).collect()
    }

    /// Whether `f` (rank(other) × rank(self)) commutes with the action.
    pub fn is_equivariant_map(&self, other: &GLattice, f: &IntMatrix) -> bool {
        self.action.iter().zip(&other.action).all(|(a, b)| f.mul(a) == b.mul(f))
    }
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub lattice: GLattice,
    pub project: IntMatrix,
    pub lift: IntMatrix,
}

pub(crate) fn left_multiplication(g: &Group, s: usize) -> IntMatrix {
    let n = g.order();
    let mut m = IntMatrix::zeros(n, n);
    for x in 0..n {
        m.set(g.mul(s, x), x, 1);
    }
    m
}
