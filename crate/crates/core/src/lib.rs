//! Exact p-adic computations with L-invariants, dual L-invariants and
//! first-order families of characters of Q_p^×.

pub mod error;
pub mod linalg;
pub mod padic;
pub mod deformation;
pub mod cohomology;
pub mod characters;
pub mod family;
pub mod literal;
pub mod cli;

pub use error::{Error, Result};
