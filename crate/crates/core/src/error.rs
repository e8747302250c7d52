//! Error types shared across the library.

use thiserror::Error;

/// Which of the two operation tables an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum OpKind {
    Add,
    Mul,
}

impl std::fmt::Display for OpKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OpKind::Add => write!(f, "+"),
            OpKind::Mul => write!(f, "*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("subset refers to point {index} outside the space of {n_points} points")]
    MismatchedSpace { index: usize, n_points: usize },

    #[error("subset member {index} lies outside the carrier")]
    OutsideCarrier { index: usize },

    #[error("{what} is too large: {size} exceeds the supported bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("the subset must be nonempty")]
    EmptySet,

    #[error("the list of ideals must be nonempty")]
    EmptyList,

    #[error("no additive identity exists in the upper approximation of the carrier")]
    NoAdditiveIdentity,

    #[error("ambiguous identity for `{op}`: points {first} and {second} both act as identity")]
    AmbiguousIdentity {
        op: OpKind,
        first: usize,
        second: usize,
    },

    #[error("carrier element {element} has no additive inverse inside the carrier")]
    MissingInverse { element: usize },

    #[error("no unity element exists in the upper approximation of the carrier")]
    NoUnity,

    #[error("instance is not an approximately commutative ring")]
    NotARing,

    #[error("subset {{{members}}} is not an approximately ideal: {reason}")]
    NotAnIdeal { members: String, reason: String },

    #[error("radical {{{members}}} is not an approximately ideal: {reason}")]
    RadicalNotIdeal { members: String, reason: String },

    #[error("product would have {requested} points, above the limit of {limit}")]
    SizeOverflow { requested: usize, limit: usize },

    #[error("infeasible generation parameters: {reason}")]
    InfeasibleParams { reason: String },

    #[error("instance is not classical: {reason}")]
    NotClassical { reason: String },

    #[error("invalid instance: {reason}")]
    Validation { reason: String },
}

impl AlgebraError {
    pub(crate) fn validation(reason: impl Into<String>) -> Self {
        AlgebraError::Validation {
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
