//! Correction of errors on quantum codes built from classical parity checks
//! and a cross-check matrix, with the tools to analyse, simulate and search
//! for such codes.

pub mod circuit;
pub mod code;
pub mod decoding;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod ising;
pub mod logical;
pub mod pauli;
pub mod propagation;
pub mod search;
pub mod stabilizers;

pub use code::{AnyCode, CpcCode, CssCode, GeneralCpcCode};
pub use error::{CpcError, Result};
pub use gf2::Gf2Matrix;
pub use pauli::{Pauli, PauliString};
