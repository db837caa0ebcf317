//! Symmetric-power lifts of tempered GL(2) parameters over local fields.
//!
//! The crate models the three local-field regimes (ℂ, ℝ, p-adic with odd
//! residue characteristic), quasi-characters and tempered GL(2) parameters,
//! the Sym^n decomposition of a parameter and its block-Levi form, normalized
//! distribution characters on torus coordinates, and the permutation-sum
//! delta kernels that transfer GL(2) characters to GL(n+1).  A seeded
//! verification layer re-checks every identity the library claims.

pub mod error;
pub mod phase;
pub mod residue;
pub mod padic;
pub mod quadext;
pub mod torus;
pub mod characters;
pub mod params;
pub mod char_eval;
pub mod transfer;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
pub use phase::Phase;
