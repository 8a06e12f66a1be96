//! Finite commutative rings, amalgamated algebras along ideals, and
//! decision procedures for the arithmetical, Gaussian, and Prüfer
//! conditions.

pub mod amalgamation;
pub mod cli;
pub mod error;
pub mod expr;
pub mod harness;
pub mod ideal;
pub mod lattice;
pub mod module;
pub mod properties;
pub mod records;
pub mod ring;

pub use error::{Error, Result};
pub use ideal::Ideal;
pub use ring::{FiniteRing, Limits, Ring, RingHom};
