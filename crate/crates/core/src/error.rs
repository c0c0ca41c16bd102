use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("automorphism order exceeds cap {0}")]
    OrderCap(usize),
    #[error("Weyl group exceeds cap {0}")]
    WeylCap(usize),
    #[error("rank out of range: {0}")]
    Rank(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("quadratic form: {0}")]
    Form(String),
    #[error("place: {0}")]
    Place(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("tameness: {0}")]
    Tame(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cover: {0}")]
    Cover(String),
    #[error("model too large: {0}")]
    ModelSize(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
