use thiserror::Error;

/// Errors shared across the evaluation, summation, and probe layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain (pole touched,
    /// nonpositive shift, interval straddling a forbidden point, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested tolerance cannot be certified within the term or
    /// precision budget of the context.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Quadrature levels were exhausted before successive refinements
    /// agreed within the target tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureNoConvergence(String),

    /// An identity id not present in the catalog.
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),

    /// A relation query violating the width or size invariants.
    #[error("invalid relation query: {0}")]
    InvalidQuery(String),

    /// Working precision below the soundness floor for the requested
    /// coefficient bound.
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
