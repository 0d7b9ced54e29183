use thiserror::Error;

use crate::report::DiagramReport;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    InvalidCharacteristic(u64),

    #[error("{value} is not invertible in characteristic {characteristic}")]
    NotInvertible { value: String, characteristic: u32 },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("cannot compose: spaces differ in degree {degree}")]
    Composition { degree: i64 },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),

    #[error("differential does not square to zero in degree {degree}")]
    NotDifferential { degree: i64 },

    #[error("map does not commute with the differentials in degree {degree}")]
    NotChainMap { degree: i64 },

    #[error("map is not injective in degree {degree}")]
    NotInjective { degree: i64 },

    #[error("map is not surjective in degree {degree}")]
    NotSurjective { degree: i64 },

    #[error("{what} rejected:\n{report}")]
    Rejected { what: String, report: DiagramReport },

    #[error("subspace is not a two-sided ideal: {ring_element} * {element} = {product} leaves it")]
    NotTwoSided {
        ring_element: String,
        element: String,
        product: String,
    },

    #[error("round trip failed: {0}")]
    RoundTrip(String),
}

pub type Result<T> = std::result::Result<T, Error>;
