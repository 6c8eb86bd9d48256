//! Levi-Civita connections for real calculi over matrix algebras and over
//! finitely generated projective modules.
//!
//! * [`matlin`]: dense complex matrices and the decompositions behind every rank decision.
//! * [`liealg`]: structure constants and the invariants computed from them.
//! * [`cncalc`]: metric calculi over `C^N` and the existence decision.
//! * [`projcalc`]: the Levi-Civita criterion for projective modules.
//! * [`cli`]: input files and the command implementations.
//! * [`catalog`]: ready-made bases such as `su(n)` and block embeddings.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod cli;
pub mod cncalc;
pub mod error;
pub mod liealg;
pub mod matlin;
pub mod projcalc;

pub use error::{Error, Result};
pub use liealg::{LieBasis, StructureConstants};
pub use matlin::{ComplexMatrix, RowVector, Tolerance};
