use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial has degree {found} in `{var}`, at least {needed} required")]
    DegreeTooLow {
        var: String,
        needed: u32,
        found: u32,
    },
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("term budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
}
