//! Exact computations with U(h)-free modules over sl(n+1) and sp(2n), their
//! weightings, and the coherent families they produce.
//!
//! Layers, bottom up: [`exactalg`], [`liealg`], [`hmodules`], [`weightcat`],
//! [`coherent`].

pub mod coherent;
pub mod error;
pub mod exactalg;
pub mod hmodules;
pub mod liealg;
pub mod weightcat;

pub use error::{Error, Result};
