use thiserror::Error;

/// Errors raised by the force and correction calculations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    #[error("domain error: {name} = {value} ({requirement})")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("invalid material: {0}")]
    Material(String),

    #[error("operation `{operation}` does not support the {model} model")]
    UnsupportedModel {
        operation: &'static str,
        model: &'static str,
    },

    #[error("{name} = {value} is outside the validity range ({limit})")]
    Validity {
        name: &'static str,
        value: f64,
        limit: &'static str,
    },

    #[error("series did not converge within {terms} terms (tail bound {tail_bound:e}, partial sum {partial:e})")]
    Convergence {
        terms: usize,
        tail_bound: f64,
        partial: f64,
    },
}

pub type Result<T> = std::result::Result<T, CasimirError>;

/// Checks `value > 0` and finite.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CasimirError::Domain {
            name,
            value,
            requirement: "must be finite and > 0",
        })
    }
}
