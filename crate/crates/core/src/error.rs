use thiserror::Error;

use crate::hilbert::OperatorKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: d must be odd and at least 3")]
    InvalidDimension(i64),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("phase point ({alpha}, {beta}) is outside {{-{s}..{s}}}")]
    OutOfRange { alpha: i64, beta: i64, s: i64 },

    #[error("operator kind mismatch: expected {expected:?}, found {found:?}")]
    KindMismatch {
        expected: OperatorKind,
        found: OperatorKind,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("numerical failure in {what} (residual {residual:e})")]
    NumericalFailure { what: String, residual: f64 },

    #[error("Hermite order {k} is not supported (max {max})")]
    UnsupportedOrder { k: usize, max: usize },

    #[error("degenerate vector: norm {norm:e} is below the 1e-10 floor")]
    DegenerateVector { norm: f64 },

    #[error("no populated energy levels")]
    NoLevels,

    #[error("revival multiplier exceeds 2^63")]
    CapacityExceeded,
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}
