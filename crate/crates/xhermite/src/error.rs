use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length {l} is smaller than the partition length {len}")]
    LengthTooSmall { l: i64, len: usize },
    #[error("{m} lies in the Maya diagram")]
    InMaya { m: i64 },
    #[error("degree {n} is exceptional for this partition")]
    ExceptionalDegree { n: i64 },
    #[error("falling factorial F_{k} has a pole at {arg}")]
    Pole { k: i64, arg: String },
    #[error("partition is not a {q}-core")]
    NotCore { q: i64 },
    #[error("degree {q} is not critical")]
    NotCritical { q: i64 },
    #[error("series coefficient z^{k} is beyond truncation order {order}")]
    Truncation { k: i32, order: i32 },
    #[error("operators act on different variables")]
    VariableMismatch,
    #[error("tau has repeated roots in x")]
    RepeatedRoots,
    #[error("partition is not even")]
    NotEven,
    #[error("quadrature did not converge (last change {delta:e})")]
    NoConvergence { delta: f64 },
    #[error("expected a polynomial, found {0}")]
    NotPolynomial(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
