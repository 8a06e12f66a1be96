use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} would have {size} elements, above the cap of {cap}")]
    SizeCap {
        what: String,
        size: u128,
        cap: usize,
    },

    #[error("ideal lattice of {ring} is not enumerable: {reason}")]
    LatticeCap { ring: String, reason: String },

    #[error("content oracle budget exceeded: {pairs} polynomial pairs, budget {budget}")]
    OracleBudget { pairs: u128, budget: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element index {index} out of range for a carrier of size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("operands belong to different rings")]
    TagMismatch,

    #[error("ring axiom `{axiom}` fails at {witness:?}")]
    Axiom {
        axiom: &'static str,
        witness: Vec<usize>,
    },

    #[error("module axiom `{axiom}` fails at {witness:?}")]
    ModuleAxiom {
        axiom: &'static str,
        witness: Vec<usize>,
    },

    #[error("not a ring homomorphism: {axiom} fails at {witness:?}")]
    NotAHom {
        axiom: &'static str,
        witness: Vec<usize>,
    },

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not a submodule: {0}")]
    NotASubmodule(String),

    #[error("ring {0} is not local")]
    NotLocal(String),

    #[error("ideal is not maximal in {0}")]
    NotMaximal(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("cannot evaluate expression: {0}")]
    Eval(String),
}

impl Error {
    pub(crate) fn size_cap(what: impl Into<String>, size: u128, cap: usize) -> Self {
        Error::SizeCap {
            what: what.into(),
            size,
            cap,
        }
    }

    /// Whether the error comes from a configured resource limit rather
    /// than from malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::SizeCap { .. } | Error::LatticeCap { .. } | Error::OracleBudget { .. }
        )
    }
}
