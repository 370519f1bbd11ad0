use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the region where the operation is defined.
    #[error("{op}: domain error: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e} after {subdivisions} subdivisions")]
    Accuracy {
        estimate: f64,
        error_bound: f64,
        subdivisions: usize,
    },

    /// A profile violates the moment constraint or another feasibility condition.
    #[error("{op}: infeasible input (residual {residual:e}): {detail}")]
    Infeasible {
        op: &'static str,
        residual: f64,
        detail: String,
    },

    /// An internal invariant that the mathematics guarantees did not hold numerically.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}

pub(crate) fn ensure_finite(op: &'static str, name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(domain(op, format!("{name} must be finite, got {x}")))
    }
}
