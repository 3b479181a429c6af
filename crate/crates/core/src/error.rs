use thiserror::Error;

use crate::ComplexValue;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("W_{k}(0) diverges for k != 0")]
    BranchSingularity { k: i64 },
    #[error("derivative of W is singular at the branch point -1/e")]
    BranchPointSingularity,
    #[error("Halley iteration did not converge for W_{k}({z})")]
    NoConvergence { k: i64, z: ComplexValue },
    #[error("{x} is outside the real domain of W_{k}")]
    DomainError { k: i64, x: f64 },
    #[error("series needs 1..=170 terms, got {0}")]
    TermLimitExceeded(usize),
    #[error("degenerate coefficients: B·C must be nonzero")]
    DegenerateCoefficients,
    #[error("log ε vanishes on the chosen logarithm branch")]
    ZeroLogUnit,
    #[error("invalid unit input: {0}")]
    InvalidUnit(&'static str),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("d = {0} does not define a quadratic field")]
    DegenerateD(i64),
    #[error("field degree {0} is not an even integer >= 2")]
    OddDegree(i64),
    #[error("discriminant {0} is not negative")]
    NotImaginary(i64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(i64),
    #[error("radicand {0} is not a squarefree integer > 1")]
    NotRealQuadratic(i64),
    #[error("analytic class number {value} is not close to an integer")]
    PrecisionLoss { value: f64 },
    #[error("continued fraction period exceeded {0} steps")]
    PeriodTooLong(u64),
    #[error("invalid quadratic form: {0}")]
    InvalidForm(&'static str),
    #[error("|D| = {0} exceeds the supported range")]
    OutOfRange(i64),
}

impl Error {
    /// Numerical failures (as opposed to bad inputs).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::PrecisionLoss { .. } | Error::PeriodTooLong(_)
        )
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        if self.is_numerical() {
            3
        } else {
            2
        }
    }
}
