use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A rational function was constructed with a zero denominator.
    #[error("zero denominator")]
    ZeroDenominator,
    /// Division by the zero element.
    #[error("division by zero")]
    DivisionByZero,
    /// A substitution produced an identically vanishing denominator.
    #[error("undefined composition: substituted denominator vanishes identically")]
    UndefinedComposition,
    /// gcd of two zero polynomials.
    #[error("gcd of two zero polynomials")]
    BothZero,
    /// Metric with zero determinant where a nondegenerate one is required.
    #[error("degenerate metric")]
    DegenerateMetric,
    /// A decider restricted to constant metrics received non-constant entries.
    #[error("metric entries are not constant")]
    NonConstantEntries,
    /// A decider restricted to polynomial entries in a single variable
    /// received something else.
    #[error("metric entries are not polynomials in the required variable")]
    NonPolynomialEntries,
    /// A decider restricted to diagonal metrics received off-diagonal entries.
    #[error("metric is not diagonal")]
    NotDiagonal,
    /// Composition or inversion requested for an automorphism family that
    /// does not support it.
    #[error("operation not supported for this automorphism family")]
    UnsupportedAutomorphism,
    /// Automorphism data violating the family invariants.
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    /// The zero Poisson structure (lambda, mu) = (0, 0).
    #[error("poisson structure must not be identically zero")]
    ZeroPoissonStructure,
    /// The metric JSON had unequal off-diagonal entries.
    #[error("metric entries are not symmetric")]
    AsymmetricMetric,
    /// Search bounds outside the supported range.
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
    /// Expression syntax error, with a byte offset into the source.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// Command-line usage error.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
