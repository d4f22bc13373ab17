use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: space has dimension {expected}, vector has {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("vector has a non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("the l1-linf norm is only defined on the plane (dimension 2), got {0}")]
    MixedNormDimension(usize),

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("point set does not span the space: {0}")]
    DegenerateHull(String),

    #[error("vector is not on the unit sphere: norm {norm}")]
    NotUnit { norm: f64 },

    #[error("space `{0}` has no finite extreme-point set")]
    NoExtremePoints(String),

    #[error("{name} = {value} is outside its domain ({domain})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("method {method} is not applicable: {reason}")]
    MethodNotApplicable {
        method: &'static str,
        reason: String,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    ok: bool,
    domain: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            domain,
        })
    }
}
