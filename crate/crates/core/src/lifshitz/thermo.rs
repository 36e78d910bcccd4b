//! Entropy and the −∂F/∂a pressure check by finite differences of the free
//! energy.

use super::{free_energy, free_energy_breakdown, PlateConfig};
use crate::error::{CasimirError, Result};
use crate::numerics::{central_richardson, Derivative};

/// Relative accuracy of every free-energy evaluation feeding a derivative.
/// Differences of nearby F values lose several digits, so F is computed far
/// tighter than the reported derivative.
pub const THERMO_REL_TOL: f64 = 1e-10;

/// Target relative accuracy of the entropy; the two-level Richardson
/// discrepancy may exceed it by at most a factor of 10.
pub const ENTROPY_REL_TOL: f64 = 1e-3;

/// Free energy, entropy and the pressure recovered from F.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoResult {
    /// J/m².
    pub free_energy: f64,
    pub free_energy_error: f64,
    /// J/(m²·K); `None` at T = 0.
    pub entropy: Option<f64>,
    pub entropy_error: Option<f64>,
    /// −∂F/∂a, Pa.
    pub pressure_check: f64,
    pub pressure_check_error: f64,
}

fn tightened(cfg: &PlateConfig) -> PlateConfig {
    let mut tight = cfg.clone();
    tight.quad.rel_tol = cfg.quad.rel_tol.min(THERMO_REL_TOL);
    tight
}

/// S = −∂F/∂T by central differences with step ΔT = max(0.01T, 0.1 K)
/// (capped at T/2) and one Richardson extrapolation.
pub fn entropy(cfg: &PlateConfig) -> Result<Derivative> {
    cfg.validate()?;
    let t = cfg.temperature;
    if !(t > 0.0) {
        return Err(CasimirError::InvalidConfig("entropy needs T > 0".into()));
    }
    let tight = tightened(cfg);
    let f0 = free_energy_breakdown(&tight)?;
    let h = (0.01 * t).max(0.1).min(0.5 * t);
    let d = central_richardson(|tt| free_energy(&tight.with_temperature(tt)?), t, h)?;
    let s = -d.value;
    // Each F carries its own quadrature error; the difference quotient amplifies it.
    let noise = f0.est_error.max(tight.quad.rel_tol * f0.total.abs()) / h;
    let allowed = 10.0 * (ENTROPY_REL_TOL * s.abs()).max(noise);
    if d.error > allowed {
        return Err(CasimirError::Derivative(format!(
            "entropy estimates at steps {h:e} and {:e} K differ by {:e} (allowed {allowed:e})",
            0.5 * h,
            d.error
        )));
    }
    Ok(Derivative {
        value: s,
        error: d.error + noise,
    })
}

/// −∂F/∂a from five-point central differences with step 0.01a; the error is
/// the Richardson estimate against step 0.02a plus the amplified quadrature
/// noise of F.
pub fn pressure_check(cfg: &PlateConfig) -> Result<Derivative> {
    cfg.validate()?;
    let tight = tightened(cfg);
    let a = cfg.gap_a;
    let h = 0.01 * a;
    let f = |x: f64| free_energy(&tight.with_gap(x)?);
    let (fm4, fm2, fm1) = (f(a - 4.0 * h)?, f(a - 2.0 * h)?, f(a - h)?);
    let (fp1, fp2, fp4) = (f(a + h)?, f(a + 2.0 * h)?, f(a + 4.0 * h)?);
    let five_point = |m2: f64, m1: f64, p1: f64, p2: f64, step: f64| {
        -(m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * step)
    };
    let fine = five_point(fm2, fm1, fp1, fp2, h);
    let coarse = five_point(fm4, fm2, fp2, fp4, 2.0 * h);
    let f_err = tight.quad.rel_tol * fm1.abs().max(fp1.abs());
    let noise = 1.5 * f_err / h;
    let value = fine;
    if !value.is_finite() {
        return Err(CasimirError::Derivative("non-finite pressure check".into()));
    }
    Ok(Derivative {
        value,
        error: (fine - coarse).abs() / 15.0 + noise,
    })
}

/// Free energy at tight tolerance, the entropy (T > 0) and −∂F/∂a.
pub fn thermo(cfg: &PlateConfig) -> Result<ThermoResult> {
    cfg.validate()?;
    let f = free_energy_breakdown(&tightened(cfg))?;
    let (entropy, entropy_error) = if cfg.temperature > 0.0 {
        let s = entropy(cfg)?;
        (Some(s.value), Some(s.error))
    } else {
        (None, None)
    };
    let p = pressure_check(cfg)?;
    Ok(ThermoResult {
        free_energy: f.total,
        free_energy_error: f.est_error,
        entropy,
        entropy_error,
        pressure_check: p.value,
        pressure_check_error: p.error,
    })
}
