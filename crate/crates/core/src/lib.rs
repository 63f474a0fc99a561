//! Equational theories, Lawvere theories, symmetric operads and analytic
//! monads as finite data, with the translations between them and exhaustive
//! small-arity law checkers.

pub mod cli;
pub mod dsl;
pub mod error;
pub mod finset;
pub mod lawvere;
pub mod monads;
pub mod operads;
pub mod terms;
pub mod theories;

pub use error::{Error, Result};
