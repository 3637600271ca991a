//! Semisimplicity of cyclotomic quiver Hecke algebras of type C, with explicit modules
//! and exact verification against the defining relations.

pub mod criterion;
pub mod error;
pub mod exactla;
pub mod presentation;
pub mod repmodels;
pub mod root_data;
pub mod specht;
pub mod sweep;
pub mod tableaux;

pub use error::{KlrError, Result};
