//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the physics operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a precondition. Carries the name of the offending
    /// parameter so callers can report it.
    #[error("domain error: `{parameter}` must be {requirement} (got {value:e})")]
    Domain {
        parameter: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// A caller requested arithmetic that the contract reserves for an
    /// analytic limit path (e.g. finite-permittivity math on a perfect
    /// conductor).
    #[error("contract violation: {0}")]
    Contract(&'static str),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error(
        "quadrature did not converge within {max_subdivisions} subdivisions \
         (residual error estimate {residual:e})"
    )]
    QuadratureNonConvergence {
        max_subdivisions: usize,
        residual: f64,
    },

    /// The Matsubara sum hit its index cap with a tail bound above tolerance.
    /// Free-energy sums carry the partial breakdown accumulated so far;
    /// pressure sums carry none (their per-index terms are not retained).
    #[error(
        "Matsubara sum did not converge within n_max = {n_max} \
         (tail estimate {tail_estimate:e})"
    )]
    SumNonConvergence {
        n_max: usize,
        tail_estimate: f64,
        partial: Option<Box<crate::thermal::FreeEnergyBreakdown>>,
    },

    /// A fixed-point iteration failed to settle. Carries the last iterate.
    #[error(
        "fixed-point iteration did not converge within {iterations} iterations \
         (last lambda'/lambda = {last_ratio})"
    )]
    FixedPointNonConvergence { iterations: usize, last_ratio: f64 },
}

impl Error {
    /// Convenience constructor for positivity checks.
    pub(crate) fn not_positive(parameter: &'static str, value: f64) -> Self {
        Error::Domain {
            parameter,
            requirement: "strictly positive",
            value,
        }
    }

    /// Convenience constructor for non-negativity checks.
    pub(crate) fn negative(parameter: &'static str, value: f64) -> Self {
        Error::Domain {
            parameter,
            requirement: "non-negative",
            value,
        }
    }

    /// True for errors that indicate a numerical failure rather than bad
    /// input; the CLI maps these to a distinct exit code.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNonConvergence { .. }
                | Error::SumNonConvergence { .. }
                | Error::FixedPointNonConvergence { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
