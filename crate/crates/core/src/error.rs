use thiserror::Error;

/// Errors raised by the algebra, colour and evaluation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coefficient in {0}")]
    NonFinite(&'static str),
    #[error("light-like split-quaternion has no inverse (N^2 = {0:e})")]
    LightLikeNotInvertible(f64),
    #[error("split-quaternion is not strictly time-like (N^2 = {0:e})")]
    NotTimeLike(f64),
    #[error("scalar part must be positive, got {0}")]
    NegativeScalarPart(f64),
    #[error("split-quaternion is not unit (N = {0})")]
    NotUnit(f64),
    #[error("matrix is not symmetric (|m01 - m10| = {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("velocity norm {0} reaches the light cone")]
    LightLikeVelocity(f64),
    #[error("invalid chromatic state: {0}")]
    InvalidState(String),
    #[error("invalid effect: {0}")]
    InvalidEffect(String),
    #[error("hue {0} outside the remap domain")]
    DomainError(f64),
    #[error("point lies outside the positivity cone (q0 = {q0}, chroma = {chroma})")]
    OutsideCone { q0: f64, chroma: f64 },
    #[error("degenerate illuminant: {0}")]
    DegenerateIlluminant(String),
    #[error("image buffer has {got} pixels, expected {width}x{height}")]
    DimensionMismatch { width: usize, height: usize, got: usize },
    #[error("region {index} ({x0},{y0})-({x1},{y1}) is outside the {width}x{height} image")]
    RegionOutOfBounds {
        index: usize,
        x0: usize,
        y0: usize,
        x1: usize,
        y1: usize,
        width: usize,
        height: usize,
    },
    #[error("invalid checker layout: {0}")]
    InvalidLayout(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("cannot average an empty dataset")]
    EmptyDataset,
    #[error("unknown CAT kind `{0}`")]
    UnknownCat(String),
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
