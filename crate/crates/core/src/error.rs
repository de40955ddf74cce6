use thiserror::Error;

use crate::exact::LaurentPoly;

#[derive(Debug, Error)]
pub enum Error {
    /// Exact division left a remainder. Carries the remainder so a broken
    /// pole cancellation can be diagnosed.
    #[error("exact division left a non-zero remainder of degree {}", .remainder.max_deg().unwrap_or(0))]
    NonZeroRemainder { remainder: LaurentPoly },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("rescaling z by zero")]
    ZeroRescale,

    #[error("input is not symmetric under z -> 1/z")]
    NotSymmetric,

    #[error("series reciprocal needs a non-zero scalar constant term")]
    NonInvertibleSeries,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation node is too close to a zero of a q-product")]
    IllConditioned,

    #[error("unknown check id pattern: {0}")]
    UnknownCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
