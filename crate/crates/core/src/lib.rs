//! Exact computational certificates for finite group actions on products of
//! spheres: finite groups, exact character theory, the character
//! constructions for rank-3 p-groups, and finite ℤG chain complexes.

pub mod character;
pub mod cli;
pub mod constructions;
pub mod group;
pub mod zg;

pub use group::{FiniteGroup, Group};
