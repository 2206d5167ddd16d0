use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid root system {kind}{rank}: {reason}")]
    InvalidType {
        kind: char,
        rank: usize,
        reason: String,
    },

    #[error("parabolic index {p} out of range for rank {rank} (indices are 0-based)")]
    InvalidParabolic { p: usize, rank: usize },

    #[error("{0:?} is not a root of this system")]
    NotARoot(Vec<i32>),

    #[error("Weyl group order {order} exceeds the configured cap {cap}; raise the cap to at least {order}")]
    CapExceeded { order: u128, cap: u128 },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("evaluation point is within {distance:.3e} of a singularity of {factor}")]
    PoleProximity { factor: String, distance: f64 },

    #[error("xi has a pole at s = {at} (residue {residue})")]
    XiPole { at: i32, residue: i32 },

    #[error("sample point {0} is not generic (collides with a singular hyperplane); choose another point")]
    NonGenericPoint(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
