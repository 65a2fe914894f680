//! Emptiness and intersection for sets of terms defined by Horn programs
//! with at most one body atom, where each body term is obtained from its
//! head by deleting subterms compatibly with a global congruence on paths.

pub mod cli;
pub mod deletion;
pub mod diag;
pub mod engine;
pub mod error;
pub mod path;
pub mod repr;
pub mod syntax;
pub mod term;

pub use error::{Error, Result};
