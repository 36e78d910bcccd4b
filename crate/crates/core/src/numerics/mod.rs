//! Shared numerical machinery.
//!
//! Everything here is stateless. The Matsubara engine may evaluate terms on a
//! thread pool, but reduces them strictly in ascending index order so results
//! are bit-identical regardless of scheduling.

mod diff;
mod euler_maclaurin;
mod quad;
mod sum;

pub use diff::{central_richardson, guarded_derivative, one_sided_weights, Derivative};
pub use euler_maclaurin::{
    euler_maclaurin, EulerMaclaurin, OddDerivatives, BERNOULLI_EVEN,
};
pub use quad::{
    adaptive_quad, adaptive_quad_points, adaptive_quad_semi_infinite, try_adaptive_quad_vec,
    QuadEstimate, VecEstimate,
};
pub use sum::{evaluate_matsubara_terms, matsubara_sum, CompensatedSum, MatsubaraTerms};

use crate::error::{CasimirError, Result};

/// Tolerances and cut-offs shared by every integrator and summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Target relative accuracy of each reported result.
    pub rel_tol: f64,
    /// Absolute error below which a result is accepted regardless of `rel_tol`.
    pub abs_floor: f64,
    /// Panel budget for one adaptive integration.
    pub max_subdivisions: usize,
    /// Upper cut-off of the exponentially damped variable y = 2aκ₀.
    pub y_max: f64,
    /// Hard cap on Matsubara terms.
    pub matsubara_m_max: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            rel_tol: 1e-5,
            abs_floor: 0.0,
            max_subdivisions: 2000,
            y_max: 60.0,
            matsubara_m_max: 1_000_000,
        }
    }
}

impl QuadratureSettings {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 1e-12 && self.rel_tol <= 1e-1) {
            return Err(CasimirError::InvalidConfig(format!(
                "rel_tol {} outside (1e-12, 1e-1]",
                self.rel_tol
            )));
        }
        if !(self.y_max >= 30.0) {
            return Err(CasimirError::InvalidConfig(format!(
                "y_max {} must be at least 30",
                self.y_max
            )));
        }
        if !(self.abs_floor >= 0.0) {
            return Err(CasimirError::InvalidConfig("abs_floor must be >= 0".into()));
        }
        if self.max_subdivisions == 0 || self.matsubara_m_max == 0 {
            return Err(CasimirError::InvalidConfig(
                "subdivision and term budgets must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Settings for a nested (inner) integral: one decade tighter.
    pub(crate) fn inner(&self) -> Self {
        QuadratureSettings {
            rel_tol: (self.rel_tol * 0.1).max(2e-13),
            abs_floor: self.abs_floor * 0.1,
            ..*self
        }
    }
}

/// How a Matsubara sum ended.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SumDiagnostics {
    pub terms_used: usize,
    /// |last term| / |running total|.
    pub last_term_fraction: f64,
    /// Geometric estimate of the neglected tail, in result units.
    pub truncation_estimate: f64,
}
