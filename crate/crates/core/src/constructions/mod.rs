//! Character-theoretic constructions for p-groups as executable verifications.

mod abelian;
mod amalgam;
mod isotropy;
mod rank3;
mod report;

pub use abelian::{beta_abelian, eta, verify_abelian};
pub use amalgam::{amalgam_obstruction, effective_characters, EffectiveCharacter};
pub use isotropy::{
    center_sphere_family, check_family, isotropy_of_product, Provenance, RepresentationFamily, SphereActionModel,
};
pub use rank3::{
    beta_rank3, beta_rank3_case_formula, corrupt_beta, verify_rank3, verify_rank3_with_beta, BetaCase, CaseFormula,
};
pub use report::{Check, Status, VerificationReport};

use crate::character::CharError;
use crate::group::GroupError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no case formula matches subgroup {subgroup:?}: {reason}")]
    NoCaseMatches { subgroup: Vec<usize>, reason: String },
    #[error("isotropy subgroup {subgroup:?} is not abelian")]
    NonAbelianIsotropy { subgroup: Vec<usize> },
    #[error("rank {rank} of Ω_1 of isotropy subgroup {subgroup:?} exceeds the target {target}")]
    RankExceedsTarget { subgroup: Vec<usize>, rank: usize, target: usize },
    #[error("no representation assigned to isotropy class {0}")]
    MissingAssignment(usize),
    #[error("no suitable characters of the center: {0}")]
    NoSuitableCharacters(String),
    #[error("bad group: {0}")]
    BadGroup(String),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

