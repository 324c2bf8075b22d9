use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    IndexOutOfRange { index: usize, bound: usize },
    OrdinalMismatch { expected: usize, found: usize },
    TruncationMismatch { left: usize, right: usize },
    LevelOutOfRange { level: usize, truncation: usize },
    /// The check needs more stored levels; extend the input with a coskeleton.
    TruncationTooSmall { needed: usize, found: usize },
    /// A simplicial identity fails on a concrete simplex.
    IdentityViolation { identity: String, level: usize, simplex: String },
    /// Enumeration would exceed the configured cap.
    EnumerationLimit { limit: u64, estimate: u128 },
    /// Descent data whose cocycle condition fails on a 2-simplex.
    CocycleViolation { simplex: String },
    NotHypergroupoid(String),
    NotCartesian(String),
    Infinite(String),
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            Error::OrdinalMismatch { expected, found } => {
                write!(f, "ordinal mismatch: expected [{expected}], found [{found}]")
            }
            Error::TruncationMismatch { left, right } => {
                write!(f, "truncation mismatch: {left} vs {right}")
            }
            Error::LevelOutOfRange { level, truncation } => {
                write!(f, "level {level} out of range for truncation {truncation}")
            }
            Error::TruncationTooSmall { needed, found } => write!(
                f,
                "truncation {found} is too small, need {needed}; extend the input with its coskeleton"
            ),
            Error::IdentityViolation { identity, level, simplex } => {
                write!(f, "simplicial identity {identity} fails at level {level} on simplex {simplex}")
            }
            Error::EnumerationLimit { limit, estimate } => write!(
                f,
                "enumeration exceeds the limit of {limit} (estimated search size up to {estimate})"
            ),
            Error::CocycleViolation { simplex } => {
                write!(f, "cocycle condition fails on 2-simplex {simplex}")
            }
            Error::NotHypergroupoid(m) => write!(f, "not a hypergroupoid: {m}"),
            Error::NotCartesian(m) => write!(f, "not a Cartesian morphism: {m}"),
            Error::Infinite(m) => write!(f, "infinite level: {m}"),
            Error::Invalid(m) => write!(f, "{m}"),
        }
    }
}

impl core::error::Error for Error {}
