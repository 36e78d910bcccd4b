//! A slab inside a cavity: wall | gap a₁ | slab b | gap a₂ | wall.
//!
//! With h = c − b and the slab centre offset δ from the cavity midline, the
//! gaps are a₁ = h/2 − δ and a₂ = h/2 + δ. The net pressure on the slab is
//!
//! P = (ħ/2π²) ∫dζ ∫dk⊥ Σ_q k⊥κ₀ N_q/D_q   (k_BT/π Σ′ at T > 0), with
//!
//! N_q = Δ₁Δ₂(1 − E_b)(e^{−2κ₀a₁} − e^{−2κ₀a₂}),
//! D_q = 1 − Δ₂²E_b − Δ₁²e^{−2κ₀h}(E_b − Δ₂²) − Δ₁Δ₂(1 − E_b)(e^{−2κ₀a₁} + e^{−2κ₀a₂}),
//!
//! E_b = e^{−2κ₂b}, Δ₁ (Δ₂) the vacuum→wall (vacuum→slab) coefficient. The
//! pair e^{−2κ₀a₁} ± e^{−2κ₀a₂} is 2e^{−κ₀h}·{sinh, cosh}(2κ₀δ) written so
//! that nothing overflows for large κ₀δ.

use crate::constants::{casimir_pressure, C};
use crate::dielectric::{DielectricModel, ZeroModeLimit};
use crate::error::{CasimirError, Result};
use crate::lifshitz::{integrate_kernel, reflections_at, ModeKernel, PressureResult};
use crate::numerics::QuadratureSettings;

/// Denominators at or below this value are treated as singular.
const SINGULAR_DENOMINATOR: f64 = 1e-12;
/// Below this y the ideal-metal denominator vanishes as y² together with the
/// numerator (a removable 0/0), so it is not reported as singular.
const SINGULAR_MIN_Y: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct FiveLayerConfig {
    /// Total cavity width c = a₁ + b + a₂, m.
    pub cavity_c: f64,
    /// Slab thickness b, m.
    pub slab_b: f64,
    /// Slab centre minus cavity midline δ, m.
    pub offset_delta: f64,
    pub wall_model: DielectricModel,
    pub slab_model: DielectricModel,
    pub temperature: f64,
    pub quad: QuadratureSettings,
}

/// Polarisation selector for [`five_layer_integrand`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    TE,
    TM,
}

impl FiveLayerConfig {
    pub fn new(
        cavity_c: f64,
        slab_b: f64,
        offset_delta: f64,
        wall_model: DielectricModel,
        slab_model: DielectricModel,
        temperature: f64,
    ) -> Result<Self> {
        let cfg = FiveLayerConfig {
            cavity_c,
            slab_b,
            offset_delta,
            wall_model,
            slab_model,
            temperature,
            quad: QuadratureSettings::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_quad(mut self, quad: QuadratureSettings) -> Result<Self> {
        self.quad = quad;
        self.validate()?;
        Ok(self)
    }

    pub fn with_delta(&self, offset_delta: f64) -> Result<Self> {
        let cfg = FiveLayerConfig {
            offset_delta,
            ..self.clone()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let (c, b, d) = (self.cavity_c, self.slab_b, self.offset_delta);
        if !(b > 0.0 && b < c) || !c.is_finite() {
            return Err(CasimirError::InvalidConfig(format!(
                "need 0 < b < c (got b = {b}, c = {c})"
            )));
        }
        if !(d.abs() < 0.5 * (c - b)) {
            return Err(CasimirError::InvalidConfig(format!(
                "|delta| = {} must be below (c - b)/2 = {}",
                d.abs(),
                0.5 * (c - b)
            )));
        }
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(CasimirError::InvalidConfig(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        self.quad.validate()
    }

    /// Combined vacuum width h = c − b.
    pub fn gap_h(&self) -> f64 {
        self.cavity_c - self.slab_b
    }

    /// (a₁, a₂) = (h/2 − δ, h/2 + δ).
    pub fn gaps(&self) -> (f64, f64) {
        let half = 0.5 * self.gap_h();
        (half - self.offset_delta, half + self.offset_delta)
    }

    /// Per-polarisation (Δ₁, Δ₂, E_b).
    fn layer_terms(
        &self,
        zeta: f64,
        zero_mode: bool,
        k_perp: f64,
        kappa0: f64,
    ) -> Result<[(f64, f64, f64); 2]> {
        let (te1, tm1) = reflections_at(&self.wall_model, zeta, zero_mode, k_perp, kappa0)?;
        let (te2, tm2) = reflections_at(&self.slab_model, zeta, zero_mode, k_perp, kappa0)?;
        let slab = &self.slab_model;
        let e_b = if slab.is_ideal() {
            0.0
        } else {
            let kappa2 = if zero_mode {
                match slab.zero_mode_limit() {
                    ZeroModeLimit::Finite(l) => (k_perp * k_perp + l).sqrt(),
                    _ => k_perp,
                }
            } else {
                let q = zeta / C;
                (kappa0 * kappa0 + (slab.eps_imag(zeta)? - 1.0) * q * q).sqrt()
            };
            (-2.0 * kappa2 * self.slab_b).exp()
        };
        Ok([(te1, te2, e_b), (tm1, tm2, e_b)])
    }
}

/// (N, D) for one polarisation; `e1`, `e2`, `eh` are e^{−2κ₀a₁}, e^{−2κ₀a₂}, e^{−2κ₀h}.
fn num_den(d1: f64, d2: f64, e_b: f64, e1: f64, e2: f64, eh: f64) -> (f64, f64) {
    let coupling = d1 * d2 * (1.0 - e_b);
    let num = coupling * (e1 - e2);
    let den = 1.0 - d2 * d2 * e_b - d1 * d1 * eh * (e_b - d2 * d2) - coupling * (e1 + e2);
    (num, den)
}

fn checked_ratio(num: f64, den: f64, y_near: f64) -> Result<f64> {
    if den <= SINGULAR_DENOMINATOR && y_near > SINGULAR_MIN_Y {
        return Err(CasimirError::SingularConfiguration(den));
    }
    if num == 0.0 {
        return Ok(0.0);
    }
    Ok(num / den)
}

/// I_q = k⊥κ₀ N_q/D_q, normalised so that P = (ħ/2π²)∫dζ∫dk⊥ (I_TE + I_TM).
pub fn five_layer_integrand(
    cfg: &FiveLayerConfig,
    zeta: f64,
    k_perp: f64,
    polarization: Polarization,
) -> Result<f64> {
    cfg.validate()?;
    if !(zeta >= 0.0) || !(k_perp >= 0.0) || (zeta == 0.0 && k_perp == 0.0) {
        return Err(CasimirError::Domain(format!(
            "integrand needs zeta >= 0, k_perp >= 0, not both zero (got {zeta}, {k_perp})"
        )));
    }
    let kappa0 = (k_perp * k_perp + (zeta / C).powi(2)).sqrt();
    let (a1, a2) = cfg.gaps();
    let terms = cfg.layer_terms(zeta, zeta == 0.0, k_perp, kappa0)?;
    let (d1, d2, e_b) = match polarization {
        Polarization::TE => terms[0],
        Polarization::TM => terms[1],
    };
    let e1 = (-2.0 * kappa0 * a1).exp();
    let e2 = (-2.0 * kappa0 * a2).exp();
    let eh = (-2.0 * kappa0 * cfg.gap_h()).exp();
    let (num, den) = num_den(d1, d2, e_b, e1, e2, eh);
    Ok(k_perp * kappa0 * checked_ratio(num, den, 2.0 * kappa0 * a1.min(a2))?)
}

/// Integrand in y = 2κ₀a_near for the configuration with δ ≥ 0 mirrored in.
struct SlabKernel<'a> {
    cfg: &'a FiveLayerConfig,
    near: f64,
    far: f64,
}

impl ModeKernel for SlabKernel<'_> {
    fn length(&self) -> f64 {
        self.near
    }

    fn eval(&self, zeta: f64, zero_mode: bool, y: f64) -> Result<[f64; 2]> {
        let two_a = 2.0 * self.near;
        let y0 = two_a * zeta / C;
        let kappa0 = y / two_a;
        let k_perp = ((y - y0).max(0.0) * (y + y0)).sqrt() / two_a;
        let terms = self.cfg.layer_terms(zeta, zero_mode, k_perp, kappa0)?;
        let e1 = (-y).exp();
        let e2 = (-y * self.far / self.near).exp();
        let eh = (-y * (self.near + self.far) / self.near).exp();
        let mut out = [0.0; 2];
        for (slot, (d1, d2, e_b)) in out.iter_mut().zip(terms) {
            let (num, den) = num_den(d1, d2, e_b, e1, e2, eh);
            *slot = y * y * checked_ratio(num, den, y)?;
        }
        Ok(out)
    }
}

/// Net pressure on the slab, Pa; positive for δ > 0 and odd in δ.
///
/// The integral is always evaluated for |δ| and the sign applied afterwards,
/// so P(−δ) = −P(δ) holds exactly.
pub fn five_layer_pressure(cfg: &FiveLayerConfig) -> Result<PressureResult> {
    cfg.validate()?;
    let delta = cfg.offset_delta;
    if delta == 0.0 {
        return Ok(PressureResult {
            total: 0.0,
            te_part: 0.0,
            tm_part: 0.0,
            per_mode: Vec::new(),
            est_error: 0.0,
            diagnostics: None,
        });
    }
    let half = 0.5 * cfg.gap_h();
    let kernel = SlabKernel {
        cfg,
        near: half - delta.abs(),
        far: half + delta.abs(),
    };
    let factor = 1.0 / (2.0 * kernel.near).powi(3);
    let mut r = integrate_kernel(&kernel, cfg.temperature, &cfg.quad, factor)?;
    if delta < 0.0 {
        r.total = -r.total;
        r.te_part = -r.te_part;
        r.tm_part = -r.tm_part;
        for (_, v) in r.per_mode.iter_mut() {
            *v = -*v;
        }
    }
    Ok(r)
}

/// Net ideal-conductor pressure on the slab,
/// −(π²ħc/240)[1/(h/2 + δ)⁴ − 1/(h/2 − δ)⁴], Pa.
pub fn ideal_reference(h: f64, delta: f64) -> Result<f64> {
    if !(h > 0.0) || !(delta.abs() < 0.5 * h) {
        return Err(CasimirError::Domain(format!(
            "need h > 0 and |delta| < h/2 (got h = {h}, delta = {delta})"
        )));
    }
    // casimir_pressure(a) = −π²ħc/(240a⁴)
    Ok(casimir_pressure(0.5 * h + delta) - casimir_pressure(0.5 * h - delta))
}
