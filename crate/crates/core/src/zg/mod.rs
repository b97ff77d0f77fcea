//! Integral group-ring lattices, chain complexes, and projectivity
//! certificates via Tate cohomology in degrees −1 and 0.

mod cocycle;
mod complex;
mod lattice;
pub mod matrix;
mod resolution;
mod spherical;
mod tate;

pub use cocycle::{build_c_zeta, cocycle_class, surjective_cocycles, Cocycle};
pub use complex::{tensor_complexes, AbelianGroup, GChainComplex};
pub use lattice::{GLattice, Quotient};
pub use matrix::IntMatrix;
pub use resolution::{free_module, free_resolution, syzygy, Resolution, Syzygy};
pub use spherical::{find_spherical_classes, sphere_product_homology, SphericalCertificate, SphericalSearch};
pub use tate::{permutation_tensor_check, projectivity_certificate, tate_01, ProjectivityCertificate, TateReport};

use crate::group::GroupError;

#[derive(Debug, thiserror::Error)]
pub enum ZgError {
    #[error("no built-in resolution for {0}")]
    UnsupportedGroup(String),
    #[error("cocycle is not surjective: entries have gcd {0}")]
    NotSurjective(i128),
    #[error("cocycle is not invariant under generator {0}")]
    NotEquivariant(usize),
    #[error("not a G-lattice: {0}")]
    BadLattice(String),
    #[error("not a chain complex: {0}")]
    BadComplex(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, ZgError>;
