//! Three-layer (plate–vacuum–plate) Lifshitz theory.
//!
//! Conventions: SI units; attraction is a negative pressure. Every Matsubara
//! term is integrated in the variable y = 2aκ₀, where κ₀ = √(k⊥² + ζ²/c²), so
//! the exponential weight e^{−y} is explicit and the integral is truncated at
//! `QuadratureSettings::y_max`.

mod engine;
mod ideal;
mod thermo;

pub use engine::{
    euler_maclaurin_pressure, free_energy, free_energy_breakdown, integrand_grid,
    matsubara_summand, pressure, te_zero_mode_continuation, EulerMaclaurinCheck,
    IntegrandSample,
};
pub use ideal::{
    ideal_low_t_entropy, ideal_low_t_free_energy, ideal_pressure, mim_corrections,
    pfa_applicable, sphere_plate_force, IdealForm, MimCorrections,
};
pub use thermo::{entropy, pressure_check, thermo, ThermoResult};

pub(crate) use engine::{integrate_kernel, ModeKernel};

use crate::constants::C;
use crate::dielectric::{DielectricModel, ZeroModeLimit};
use crate::error::{CasimirError, Result};
use crate::numerics::{QuadratureSettings, SumDiagnostics};

/// How the m = 0 Matsubara term obtains its reflection coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroModePolicy {
    /// From the analytic ζ → 0 limit of each plate's model.
    #[default]
    FromModel,
    /// ε → ∞ taken before ζ → 0: both polarisations reflect perfectly at m = 0.
    ForceIdealBoth,
    /// Modified ideal metal: perfect reflection everywhere except the TE zero
    /// mode, which is dropped.
    ExcludeTE,
}

impl ZeroModePolicy {
    pub fn name(&self) -> &'static str {
        match self {
            ZeroModePolicy::FromModel => "from-model",
            ZeroModePolicy::ForceIdealBoth => "force-ideal-both",
            ZeroModePolicy::ExcludeTE => "exclude-te",
        }
    }
}

/// Two half-spaces separated by a vacuum gap.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateConfig {
    pub left: DielectricModel,
    pub right: DielectricModel,
    /// Gap width a, m.
    pub gap_a: f64,
    /// Temperature, K (0 selects the continuous-frequency formula).
    pub temperature: f64,
    pub policy: ZeroModePolicy,
    pub quad: QuadratureSettings,
}

impl PlateConfig {
    pub fn new(
        left: DielectricModel,
        right: DielectricModel,
        gap_a: f64,
        temperature: f64,
    ) -> Result<Self> {
        let cfg = PlateConfig {
            left,
            right,
            gap_a,
            temperature,
            policy: ZeroModePolicy::FromModel,
            quad: QuadratureSettings::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Identical plates.
    pub fn symmetric(model: DielectricModel, gap_a: f64, temperature: f64) -> Result<Self> {
        Self::new(model.clone(), model, gap_a, temperature)
    }

    pub fn with_policy(mut self, policy: ZeroModePolicy) -> Result<Self> {
        self.policy = policy;
        self.validate()?;
        Ok(self)
    }

    pub fn with_quad(mut self, quad: QuadratureSettings) -> Result<Self> {
        self.quad = quad;
        self.validate()?;
        Ok(self)
    }

    pub fn with_gap(&self, gap_a: f64) -> Result<Self> {
        let cfg = PlateConfig {
            gap_a,
            ..self.clone()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        let cfg = PlateConfig {
            temperature,
            ..self.clone()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gap_a > 0.0) || !self.gap_a.is_finite() {
            return Err(CasimirError::InvalidConfig(format!(
                "gap must be positive, got {}",
                self.gap_a
            )));
        }
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(CasimirError::InvalidConfig(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        if self.policy != ZeroModePolicy::FromModel
            && !(self.left.is_ideal() && self.right.is_ideal())
        {
            return Err(CasimirError::InvalidConfig(format!(
                "zero-mode policy {} requires ideal plates",
                self.policy.name()
            )));
        }
        self.quad.validate()
    }

    /// Reflection products (Δ_ℓΔ_r)_TE and (Δ_ℓΔ_r)_TM at frequency `zeta`;
    /// `zero_mode` selects the m = 0 treatment of the configured policy.
    pub(crate) fn reflection_products(
        &self,
        zeta: f64,
        zero_mode: bool,
        k_perp: f64,
        kappa0: f64,
    ) -> Result<(f64, f64)> {
        match self.policy {
            ZeroModePolicy::ForceIdealBoth => Ok((1.0, 1.0)),
            ZeroModePolicy::ExcludeTE => Ok((if zero_mode { 0.0 } else { 1.0 }, 1.0)),
            ZeroModePolicy::FromModel => {
                let (te_l, tm_l) = reflections_at(&self.left, zeta, zero_mode, k_perp, kappa0)?;
                let (te_r, tm_r) = if self.left == self.right {
                    (te_l, tm_l)
                } else {
                    reflections_at(&self.right, zeta, zero_mode, k_perp, kappa0)?
                };
                Ok((te_l * te_r, tm_l * tm_r))
            }
        }
    }
}

/// Total pressure with its polarisation split and Matsubara breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureResult {
    /// Pa; negative means attraction.
    pub total: f64,
    pub te_part: f64,
    pub tm_part: f64,
    /// Weighted contribution of each Matsubara term (empty at T = 0).
    pub per_mode: Vec<(usize, f64)>,
    /// Combined quadrature and truncation error estimate, Pa.
    pub est_error: f64,
    /// Present for Matsubara sums.
    pub diagnostics: Option<SumDiagnostics>,
}

/// κ = √(k⊥² + εζ²/c²).
pub fn kappa(eps: f64, zeta: f64, k_perp: f64) -> Result<f64> {
    if !(eps >= 1.0) || !(zeta >= 0.0) || !(k_perp >= 0.0) {
        return Err(CasimirError::Domain(format!(
            "kappa needs eps >= 1, zeta >= 0, k_perp >= 0 (got {eps}, {zeta}, {k_perp})"
        )));
    }
    if zeta == 0.0 && k_perp == 0.0 {
        return Err(CasimirError::Domain("kappa undefined at zeta = k_perp = 0".into()));
    }
    let q = zeta / C;
    Ok((k_perp * k_perp + eps * q * q).sqrt())
}

/// (Δ_TE, Δ_TM) looking from vacuum into `model`.
///
/// Δ_TE = (κ−κ₀)/(κ+κ₀), Δ_TM = (κ−εκ₀)/(κ+εκ₀). At ζ = 0 the analytic limit
/// is used: TE from [`DielectricModel::zero_mode_limit`], TM −1 for conductors.
/// The ideal conductor has Δ_TE = +1, Δ_TM = −1 at every frequency.
pub fn reflection_coefficients(model: &DielectricModel, zeta: f64, k_perp: f64) -> Result<(f64, f64)> {
    if !(zeta >= 0.0) || !(k_perp >= 0.0) || !zeta.is_finite() || !k_perp.is_finite() {
        return Err(CasimirError::Domain(format!(
            "reflection coefficients need zeta >= 0 and k_perp >= 0 (got {zeta}, {k_perp})"
        )));
    }
    if zeta == 0.0 && k_perp == 0.0 {
        return Err(CasimirError::Domain("zero mode requires k_perp > 0".into()));
    }
    let kappa0 = kappa(1.0, zeta, k_perp)?;
    reflections_at(model, zeta, zeta == 0.0, k_perp, kappa0)
}

pub(crate) fn reflections_at(
    model: &DielectricModel,
    zeta: f64,
    zero_mode: bool,
    k_perp: f64,
    kappa0: f64,
) -> Result<(f64, f64)> {
    if zero_mode {
        let te = match model.zero_mode_limit() {
            ZeroModeLimit::Vanishing => 0.0,
            ZeroModeLimit::Finite(l) => {
                let s = (k_perp * k_perp + l).sqrt() + k_perp;
                l / (s * s)
            }
            ZeroModeLimit::Infinite => 1.0,
        };
        let tm = match model.static_permittivity() {
            Some(eps) => (1.0 - eps) / (1.0 + eps),
            None => -1.0,
        };
        return Ok((te, tm));
    }
    if model.is_ideal() {
        return Ok((1.0, -1.0));
    }
    let eps = model.eps_imag(zeta)?;
    let q = zeta / C;
    let dq2 = (eps - 1.0) * q * q;
    let kappa = (kappa0 * kappa0 + dq2).sqrt();
    let s = kappa + kappa0;
    // (κ−κ₀)/(κ+κ₀) rewritten without cancellation.
    let te = dq2 / (s * s);
    let tm = (kappa - eps * kappa0) / (kappa + eps * kappa0);
    Ok((te, tm))
}
