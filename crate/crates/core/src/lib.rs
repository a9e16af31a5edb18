//! Fibonacci anyon toolkit for deterministic quantum one-time pad capacity.
//!
//! The crate is organised bottom-up:
//!
//! - [`anyon`]: charges, fusion rules, quantum dimensions, F/R matrices and the
//!   three-strand braid generators.
//! - [`fusion`]: fusion-tree bases and bipartite sector-Schmidt states
//!   (`|B⟩^⊗n` and the six-anyon `G(p)` family).
//! - [`linalg`]: sector-blocked operators, the quantum trace, anyonic density
//!   operators, entropy and mutual information.
//! - [`dqotp`]: security/orthogonality checks, clock-and-shift encodings,
//!   capacity bounds and a numerical maximal message-set search.
//! - [`simplex`]: the exact step function for `G(p)` and its regular-simplex
//!   encodings.
//! - [`holevo`]: Holevo decomposition and capacity sweeps over `p`.
//! - [`braid`]: braid-word evaluation and meet-in-the-middle synthesis.
//! - [`cli`]: the `fibpad` command-line front end.
//!
//! Fusion order is left-to-right everywhere. Entropies are in bits.

#![forbid(unsafe_code)]

pub mod anyon;
pub mod braid;
pub mod cli;
pub mod dqotp;
mod error;
pub mod fusion;
pub mod holevo;
pub mod linalg;
pub mod simplex;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;

/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
