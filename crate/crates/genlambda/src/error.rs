//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Levels below 7 are rejected: the parameter range `1 < ℓ ≠ k < N/2`
    /// is empty for N ≤ 6, and N = 6 is deliberately unsupported.
    #[error("level N = {0} is unsupported, need N >= 7")]
    LevelTooSmall(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} must be coprime to the level {1}")]
    NotCoprime(i64, u32),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("operand is not integral (not in Z[zeta]): {0}")]
    NonIntegral(&'static str),

    /// A series was indistinguishable from zero at its stored precision, or an
    /// operation would have to report coefficients it cannot guarantee.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Principal-part elimination against the j-series left a nonzero
    /// residual. This signals a precision bug or a non-invariant input and is
    /// never silently accepted.
    #[error("reduction to Z[j] failed: {0}")]
    ReductionFailure(String),

    #[error("j(alpha) is not near a rational integer: {0}")]
    NonIntegerJ(String),

    #[error("certification supports only class-number-one discriminants, got {0}")]
    UnsupportedClassNumber(i64),

    #[error("certificate residual {residual} exceeds tolerance {tolerance}")]
    ResidualTooLarge { residual: String, tolerance: String },

    #[error("modular equation has non-integer coefficients; cannot serialize")]
    NotIntegerVerified,

    #[error("cache entry corrupt: {0}")]
    CacheCorrupt(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    ///
    /// 2 = input validation, 3 = precision exhaustion, 1 = everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::LevelTooSmall(_)
            | Error::InvalidParameter(_)
            | Error::NotCoprime(_, _)
            | Error::NonIntegral(_)
            | Error::NotIntegerVerified => 2,
            Error::PrecisionExhausted(_) => 3,
            _ => 1,
        }
    }
}
