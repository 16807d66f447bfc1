use thiserror::Error;

/// Failure modes shared by every stage of the pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The shape of an input is wrong (disconnected graph, odd dimension, mismatched sizes).
    #[error("structural error: {0}")]
    Structural(String),

    /// A value violates a documented precondition.
    #[error("validation error: {0}")]
    Validation(String),

    /// The requested representation only exists for graphs with `2n + 2` edges.
    #[error("unsupported topology: {edges} edges with {loops} loops (need edges = 2 * loops + 2)")]
    UnsupportedTopology { edges: usize, loops: usize },

    /// The integral is not absolutely convergent for these inputs.
    #[error("convergence risk: {0}")]
    ConvergenceRisk(String),

    /// A numerical invariant failed during evaluation.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Monte Carlo estimates are too noisy to report derived quantities.
    #[error("insufficient precision: relative standard error {rel_err:.3e} exceeds {limit:.3e}")]
    InsufficientPrecision { rel_err: f64, limit: f64 },

    /// Malformed graph specification document.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
