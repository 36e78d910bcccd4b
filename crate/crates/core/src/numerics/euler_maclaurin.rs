//! Euler–Maclaurin evaluation of primed sums:
//! Σ′_{m≥0} f(m) = ∫₀^∞ f dm − Σ_k B_{2k}/(2k)! · f^{(2k−1)}(0).

use super::{adaptive_quad_points, one_sided_weights, QuadratureSettings};
use crate::error::{CasimirError, Result};

/// B₂, B₄, B₆, B₈.
pub const BERNOULLI_EVEN: [f64; 4] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];

const FACTORIAL_EVEN: [f64; 4] = [2.0, 24.0, 720.0, 40320.0];

/// Source of the odd derivatives f′(0), f‴(0), ….
#[derive(Debug, Clone, PartialEq)]
pub enum OddDerivatives {
    /// f^{(1)}(0), f^{(3)}(0), … in order; at least `k_terms` entries.
    Supplied(Vec<f64>),
    /// One-sided Fornberg stencils at 0, `step`, 2·`step`, …
    FiniteDifference { step: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerMaclaurin {
    pub integral: f64,
    pub integral_error: f64,
    /// Correction k (1-based) is −B_{2k}/(2k)!·f^{(2k−1)}(0).
    pub corrections: Vec<f64>,
    pub derivatives: Vec<f64>,
    pub value: f64,
}

// Extra nodes beyond the derivative order; one-sided stencils are then O(h⁴).
const STENCIL_EXTRA: usize = 4;

/// `f` must be integrable on `[0, upper]` and negligible beyond `upper`.
/// `breakpoints` are optional interior points handed to the integrator.
pub fn euler_maclaurin<F>(
    mut f: F,
    upper: f64,
    breakpoints: &[f64],
    derivatives: &OddDerivatives,
    settings: &QuadratureSettings,
    k_terms: usize,
) -> Result<EulerMaclaurin>
where
    F: FnMut(f64) -> f64,
{
    if k_terms > BERNOULLI_EVEN.len() {
        return Err(CasimirError::Unsupported(format!(
            "at most {} Bernoulli corrections are tabulated",
            BERNOULLI_EVEN.len()
        )));
    }
    if !(upper > 0.0) {
        return Err(CasimirError::Domain("upper limit must be positive".into()));
    }
    let mut points = vec![0.0];
    points.extend(breakpoints.iter().copied().filter(|&p| p > 0.0 && p < upper));
    points.push(upper);
    let quad = adaptive_quad_points(&mut f, &points, settings)?;

    let derivs: Vec<f64> = match derivatives {
        OddDerivatives::Supplied(d) => {
            if d.len() < k_terms {
                return Err(CasimirError::Domain(format!(
                    "{k_terms} correction terms need {k_terms} odd derivatives, got {}",
                    d.len()
                )));
            }
            d[..k_terms].to_vec()
        }
        OddDerivatives::FiniteDifference { step } => {
            if !(*step > 0.0) {
                return Err(CasimirError::Domain("finite-difference step must be positive".into()));
            }
            let n_nodes = 2 * k_terms - 1 + STENCIL_EXTRA + 1;
            let samples: Vec<f64> = (0..n_nodes).map(|i| f(i as f64 * step)).collect();
            (1..=k_terms)
                .map(|k| {
                    let order = 2 * k - 1;
                    let w = one_sided_weights(order, order + STENCIL_EXTRA + 1, *step);
                    w.iter().zip(&samples).map(|(wi, fi)| wi * fi).sum()
                })
                .collect()
        }
    };

    let corrections: Vec<f64> = derivs
        .iter()
        .enumerate()
        .map(|(i, d)| -BERNOULLI_EVEN[i] / FACTORIAL_EVEN[i] * d)
        .collect();
    let value = quad.value + corrections.iter().sum::<f64>();
    Ok(EulerMaclaurin {
        integral: quad.value,
        integral_error: quad.error,
        corrections,
        derivatives: derivs,
        value,
    })
}
