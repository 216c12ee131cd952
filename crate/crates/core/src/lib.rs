//! Exact computations with Hecke symmetries, reflection-equation algebras and
//! their quantum Cayley-Hamilton identities.

pub mod cayley;
pub mod error;
pub mod hecke;
pub mod nc;
pub mod orbit;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;
