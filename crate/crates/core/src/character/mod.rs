//! Exact character theory over cyclotomic fields.

mod class_function;
mod cyclotomic;
mod table;

pub use class_function::{
    decompose, dimension_function, induce, inner_product, is_character, is_strictly_fpf, is_top_rank_fpf,
    reduced_regular, restrict, ClassFunction, Decomposition, DimensionFunction, FpfVerdict,
};
pub use cyclotomic::{sum_of_roots, Cyclotomic, Rational};
pub use table::{character_table, compute_character_table, CharacterTable, TABLE_CAP};

use crate::group::GroupError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("not a character: multiplicity {multiplicity} on irreducible {irreducible}")]
    NotACharacter { irreducible: usize, multiplicity: String },
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("character table lift failed: {0}")]
    LiftFailure(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, CharError>;
