use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by the core library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    InvalidInput(String),
    /// A relation set forces the idempotent of this vertex to vanish.
    InconsistentRelations { vertex: usize },
    AlgebraMismatch(String),
    NotAMorphism(String),
    /// A summand of the given Peirce dimension vector matched nothing in the catalog.
    UnmatchedSummand { dimension_vector: Vec<usize> },
    NotSplit(String),
    CapBreach { cap: usize },
    NotSaturated { source: String, target: String },
    NotInvertible(String),
    Certification(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::InconsistentRelations { vertex } => {
                write!(f, "relations force e_{vertex} = 0")
            }
            Error::AlgebraMismatch(m) => write!(f, "algebra mismatch: {m}"),
            Error::NotAMorphism(m) => write!(f, "not a morphism: {m}"),
            Error::UnmatchedSummand { dimension_vector } => {
                write!(f, "summand with dimension vector {dimension_vector:?} matches no catalog entry")
            }
            Error::NotSplit(m) => write!(f, "could not split idempotents: {m}"),
            Error::CapBreach { cap } => write!(f, "rewriting exceeded the cap {cap}"),
            Error::NotSaturated { source, target } => {
                write!(f, "Hom({source}, {target}) did not saturate at the length cap")
            }
            Error::NotInvertible(m) => write!(f, "not invertible: {m}"),
            Error::Certification(m) => write!(f, "certification failed: {m}"),
        }
    }
}

impl core::error::Error for Error {}
