use std::fmt;

use thiserror::Error;

/// Ranked-set axioms checked on input tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `r(∅) = 0`
    R0,
    /// `r(A) ≤ r(S)`
    R1,
    /// `r(A) ≤ |A|`
    R2,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::R0 => write!(f, "R0 (normalization)"),
            Axiom::R1 => write!(f, "R1 (rank of S is maximum)"),
            Axiom::R2 => write!(f, "R2 (subcardinality)"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("axiom {axiom} violated at subset {{{witness}}}")]
    AxiomViolation { axiom: Axiom, witness: String },

    #[error("ground set has {n} elements, the limit is {max}")]
    TooLarge { n: usize, max: usize },

    #[error("rank table has {got} entries, expected {expected}")]
    BadTable { expected: usize, got: usize },

    #[error("rank value {0} is out of range")]
    RankOutOfRange(i64),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("invalid label `{0}`")]
    BadLabel(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element `{0}` is already in the ground set")]
    DuplicateElement(String),

    #[error("full-set rank is zero")]
    ZeroRank,

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("bad graph: {0}")]
    BadGraph(String),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("not a poset: {0}")]
    NotAPoset(String),

    #[error("graph is not chordal: {0}")]
    NotChordal(String),

    #[error("duplicate point: {0}")]
    DuplicatePoint(String),

    #[error("structure is not an antimatroid: {0}")]
    NotAntimatroid(String),

    #[error("set {{{0}}} is not convex")]
    NotConvex(String),

    #[error("structure is not a matroid: {0}")]
    NotAMatroid(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("search budget exhausted after {nodes} nodes")]
    Exhausted { nodes: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("expansion and recursion engines disagree")]
    EngineMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
