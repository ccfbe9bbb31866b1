use thiserror::Error;

/// Errors raised by the arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("monomial order mismatch: {left} vs {right}")]
    OrderMismatch {
        left: crate::MonomialOrder,
        right: crate::MonomialOrder,
    },
    #[error("the zero polynomial has no leading term")]
    EmptyPolynomial,
    #[error("zero coefficient in term stream at position {0}")]
    ZeroCoefficient(usize),
    #[error("invalid variable set: {0}")]
    VariableSet(String),
    #[error("geobucket growth factor must be at least 2, got {0}")]
    GrowthFactor(usize),
    #[error("coefficient domain is trivial (1 = 0)")]
    TrivialDomain,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not univariate: {0}")]
    NotUnivariate(String),
    #[error("malformed recursive polynomial: {0}")]
    Structure(String),
    #[error("exponent too large: {0}")]
    ExponentOverflow(String),
    #[error("certificate: {0}")]
    Certificate(String),
}

pub type Result<T, E = PolyError> = std::result::Result<T, E>;
