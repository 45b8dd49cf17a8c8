use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operands belong to different groups ({left} vs {right})")]
    CrossGroup { left: String, right: String },

    #[error("ball of radius {radius} exceeds the cap of {cap} elements")]
    BallCapExceeded { radius: usize, cap: usize },

    #[error("{what} would have {size} entries, over the cap of {cap}")]
    ResourceCap { what: String, size: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a finite conjugacy class at this cap ({cap})")]
    NotFiniteClass { cap: usize },

    #[error("relator {relator} does not evaluate to the identity in {group}")]
    PresentationMismatch { relator: String, group: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("exponents {p} and {q} are not conjugate")]
    ExponentMismatch { p: f64, q: f64 },

    #[error("{0} is not central")]
    NonCentral(String),

    #[error("evaluation window of radius {radius} is empty; radius {required} or more is needed")]
    WindowUnderflow { radius: usize, required: usize },

    #[error("{group} has no admissible central sequence: {reason}")]
    NoCentralFamily { group: String, reason: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("config error in field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
