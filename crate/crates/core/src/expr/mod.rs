//! Construction expressions: parsing, printing, evaluation.

mod eval;
mod parse;

use std::fmt;

pub use crate::ring::HomExpr;
pub use eval::Evaluator;
pub use parse::{parse, parse_module, MAX_INPUT_BYTES, MAX_NESTING};

/// The grammar accepted by [`parse`], in EBNF.
pub const GRAMMAR: &str = r#"ring   := "zmod(" INT ")"
        | "tpa(" INT "," INT "," INT ")"
        | "product(" ring "," ring ")"
        | "quot(" ring ";" elems ")"
        | "trivext(" ring ";" module ")"
        | "dup(" ring ";" elems ")"
        | "amalg(" ring "," ring "," hom ";" elems ")"
module := "regular" | "resfield(" INT ")" | "quotmod(" module ";" elems ")"
hom    := "id" | "proj" | "embed" | "compose(" hom "," hom ")"
elems  := INT { "," INT }
INT    := digit { digit }
"#;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingExpr {
    Zmod(u64),
    Tpa { p: u64, k: u64, t: u64 },
    Product(Box<RingExpr>, Box<RingExpr>),
    Quot(Box<RingExpr>, Vec<usize>),
    Trivext(Box<RingExpr>, ModuleExpr),
    Dup(Box<RingExpr>, Vec<usize>),
    Amalg {
        a: Box<RingExpr>,
        b: Box<RingExpr>,
        hom: HomExpr,
        gens: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleExpr {
    Regular,
    Resfield(u64),
    Quotmod(Box<ModuleExpr>, Vec<usize>),
}

impl RingExpr {
    /// Whether the expression names an amalgamation instance.
    pub fn is_instance(&self) -> bool {
        matches!(self, RingExpr::Dup(..) | RingExpr::Amalg { .. })
    }
}

struct Elems<'a>(&'a [usize]);

impl fmt::Display for Elems<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "zmod({n})"),
            RingExpr::Tpa { p, k, t } => write!(f, "tpa({p}, {k}, {t})"),
            RingExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            RingExpr::Quot(a, g) => write!(f, "quot({a}; {})", Elems(g)),
            RingExpr::Trivext(a, m) => write!(f, "trivext({a}; {m})"),
            RingExpr::Dup(a, g) => write!(f, "dup({a}; {})", Elems(g)),
            RingExpr::Amalg { a, b, hom, gens } => {
                write!(f, "amalg({a}, {b}, {hom}; {})", Elems(gens))
            }
        }
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Regular => f.write_str("regular"),
            ModuleExpr::Resfield(k) => write!(f, "resfield({k})"),
            ModuleExpr::Quotmod(m, g) => write!(f, "quotmod({m}; {})", Elems(g)),
        }
    }
}

/// A syntax error with a 1-based position and the tokens that would have
/// been accepted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}
