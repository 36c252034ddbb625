//! Exact computation of genera, elliptic genera and equivariant indices of
//! circle actions on model manifolds.

pub mod algebra;
pub mod equivariant;
mod error;
pub mod genera;
pub mod spaces;

pub use error::{Error, Result};
