use thiserror::Error;

use crate::numerics::SumDiagnostics;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CasimirError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("infinite permittivity: the ideal model must be handled before evaluation")]
    InfinitePermittivity,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("permittivity table: {0}")]
    Table(String),

    #[error("permittivity table, line {line}: {message}")]
    TableLine { line: usize, message: String },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions: \
         best estimate {estimate:e}, error {error:e}"
    )]
    QuadratureConvergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error(
        "Matsubara sum not converged after {} terms (partial {partial:e}, last term fraction {:e})",
        .diagnostics.terms_used, .diagnostics.last_term_fraction
    )]
    SumConvergence {
        partial: f64,
        diagnostics: SumDiagnostics,
    },

    #[error("finite-difference derivative failed: {0}")]
    Derivative(String),

    #[error("singular five-layer configuration (denominator {0:e})")]
    SingularConfiguration(f64),
}

impl CasimirError {
    /// True for failures of a numerical method (as opposed to bad input).
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            CasimirError::QuadratureConvergence { .. }
                | CasimirError::SumConvergence { .. }
                | CasimirError::Derivative(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, CasimirError>;
