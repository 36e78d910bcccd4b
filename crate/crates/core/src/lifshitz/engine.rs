//! Mode integration shared by the three- and five-layer geometries.
//!
//! A [`ModeKernel`] supplies the (TE, TM) integrand of one frequency as a
//! function of y = 2Lκ₀. At T > 0 the kernel is integrated per Matsubara
//! frequency and summed; at T = 0 the frequency becomes continuous and is
//! integrated in x = 2Lζ/c over (0, y_max].

use std::cell::RefCell;
use std::f64::consts::PI;

use super::{PlateConfig, PressureResult};
use crate::constants::{matsubara_spacing, C, HBAR, K_B};
use crate::error::{CasimirError, Result};
use crate::numerics::{
    euler_maclaurin, evaluate_matsubara_terms, try_adaptive_quad_vec, CompensatedSum,
    EulerMaclaurin, OddDerivatives, QuadratureSettings, VecEstimate,
};

pub(crate) trait ModeKernel: Sync {
    /// Reference length L of the substitution y = 2Lκ₀.
    fn length(&self) -> f64;
    /// `[TE, TM]` integrand at y for frequency `zeta`; `zero_mode` marks the
    /// analytic ζ → 0 limit of the m = 0 Matsubara term.
    fn eval(&self, zeta: f64, zero_mode: bool, y: f64) -> Result<[f64; 2]>;
}

/// ∫ dy of the kernel over [2Lζ/c, y_max].
fn mode_integral<K: ModeKernel>(
    kernel: &K,
    zeta: f64,
    zero_mode: bool,
    settings: &QuadratureSettings,
) -> Result<VecEstimate<2>> {
    let y0 = 2.0 * kernel.length() * zeta / C;
    let y_max = settings.y_max;
    if y0 >= y_max {
        // The integrand is below e^{−y_max} of its peak everywhere.
        return Ok(VecEstimate {
            value: [0.0; 2],
            error: 0.0,
            subdivisions: 0,
        });
    }
    let mut points = vec![y0];
    points.extend(
        [0.5, 2.0, 8.0, 20.0]
            .iter()
            .map(|d| y0 + d)
            .filter(|&p| p < y_max),
    );
    points.push(y_max);
    try_adaptive_quad_vec(|y| kernel.eval(zeta, zero_mode, y), &points, settings)
}

/// Integrates `kernel` over modes and frequencies.
///
/// `factor` multiplies the bare dimensionless integral; the thermal prefactor
/// k_BT/π (T > 0) or the continuous-frequency prefactor ħc/(4π²L) (T = 0) is
/// applied here.
pub(crate) fn integrate_kernel<K: ModeKernel>(
    kernel: &K,
    temperature: f64,
    settings: &QuadratureSettings,
    factor: f64,
) -> Result<PressureResult> {
    let inner = settings.inner();
    let length = kernel.length();
    if temperature == 0.0 {
        let pref = factor * HBAR * C / (4.0 * PI * PI * length);
        let y_max = settings.y_max;
        let mut points = vec![0.0];
        points.extend((1..=9).rev().map(|k| y_max * 10f64.powi(-k)));
        points.push(y_max);
        let est = try_adaptive_quad_vec(
            |x| Ok(mode_integral(kernel, x * C / (2.0 * length), false, &inner)?.value),
            &points,
            settings,
        )?;
        let [te, tm] = est.value;
        let error = pref.abs() * (est.error + inner.rel_tol * (te.abs() + tm.abs()));
        return Ok(PressureResult {
            total: pref * (te + tm),
            te_part: pref * te,
            tm_part: pref * tm,
            per_mode: Vec::new(),
            est_error: error,
            diagnostics: None,
        });
    }

    let spacing = matsubara_spacing(temperature);
    let pref = factor * K_B * temperature / PI;
    // Index past which ζ_m exceeds 3c/(2L): the start of the exponential tail.
    let knee = (3.0 * C / (2.0 * length * spacing)).floor() as usize + 1;
    let out = evaluate_matsubara_terms(
        |m| {
            let est = mode_integral(kernel, m as f64 * spacing, m == 0, &inner)?;
            Ok(([pref * est.value[0], pref * est.value[1]], pref.abs() * est.error))
        },
        |t: &([f64; 2], f64)| t.0[0] + t.0[1],
        settings,
        knee,
    )?;
    let mut te = CompensatedSum::new();
    let mut tm = CompensatedSum::new();
    let mut quad_error = CompensatedSum::new();
    let mut per_mode = Vec::with_capacity(out.terms.len());
    for (m, ([t_e, t_m], err)) in out.terms.iter().enumerate() {
        let w = if m == 0 { 0.5 } else { 1.0 };
        te.add(w * t_e);
        tm.add(w * t_m);
        quad_error.add(w * err);
        per_mode.push((m, w * (t_e + t_m)));
    }
    let (te, tm) = (te.value(), tm.value());
    Ok(PressureResult {
        total: te + tm,
        te_part: te,
        tm_part: tm,
        per_mode,
        est_error: quad_error.value() + out.diagnostics.truncation_estimate,
        diagnostics: Some(out.diagnostics),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quantity {
    Pressure,
    FreeEnergy,
}

struct PlateKernel<'a> {
    cfg: &'a PlateConfig,
    quantity: Quantity,
}

/// R e^{−y}/(1 − R e^{−y}).
fn bose(r: f64, y: f64) -> f64 {
    if r == 0.0 {
        0.0
    } else if r == 1.0 {
        1.0 / y.exp_m1()
    } else {
        let x = r * (-y).exp();
        x / (1.0 - x)
    }
}

impl ModeKernel for PlateKernel<'_> {
    fn length(&self) -> f64 {
        self.cfg.gap_a
    }

    fn eval(&self, zeta: f64, zero_mode: bool, y: f64) -> Result<[f64; 2]> {
        let two_a = 2.0 * self.cfg.gap_a;
        let y0 = two_a * zeta / C;
        let kappa0 = y / two_a;
        let k_perp = ((y - y0).max(0.0) * (y + y0)).sqrt() / two_a;
        let (te, tm) = self.cfg.reflection_products(zeta, zero_mode, k_perp, kappa0)?;
        Ok(match self.quantity {
            Quantity::Pressure => [y * y * bose(te, y), y * y * bose(tm, y)],
            Quantity::FreeEnergy => {
                let e = (-y).exp();
                [y * (-te * e).ln_1p(), y * (-tm * e).ln_1p()]
            }
        })
    }
}

/// Casimir pressure between the plates (Pa, negative = attraction).
///
/// T > 0: P = −(k_BT/π) Σ′_m ∫ k⊥dk⊥ κ₀ Σ_q R_q e^{−2κ₀a}/(1 − R_q e^{−2κ₀a}),
/// with R_q = Δ_q,ℓ Δ_q,r. At T = 0 the sum becomes (ħ/2π)∫dζ.
pub fn pressure(cfg: &PlateConfig) -> Result<PressureResult> {
    cfg.validate()?;
    let kernel = PlateKernel {
        cfg,
        quantity: Quantity::Pressure,
    };
    integrate_kernel(&kernel, cfg.temperature, &cfg.quad, -1.0 / (2.0 * cfg.gap_a).powi(3))
}

/// Free energy per unit area (J/m²) with its TE/TM split; the fields of the
/// returned record carry J/m² instead of Pa.
///
/// F = (k_BT/2π) Σ′_m ∫ k⊥dk⊥ Σ_q ln(1 − R_q e^{−2κ₀a}), vanishing as a → ∞.
pub fn free_energy_breakdown(cfg: &PlateConfig) -> Result<PressureResult> {
    cfg.validate()?;
    let kernel = PlateKernel {
        cfg,
        quantity: Quantity::FreeEnergy,
    };
    integrate_kernel(&kernel, cfg.temperature, &cfg.quad, 0.5 / (2.0 * cfg.gap_a).powi(2))
}

/// Free energy per unit area, J/m².
pub fn free_energy(cfg: &PlateConfig) -> Result<f64> {
    Ok(free_energy_breakdown(cfg)?.total)
}

fn require_thermal(cfg: &PlateConfig) -> Result<()> {
    cfg.validate()?;
    if cfg.temperature > 0.0 {
        Ok(())
    } else {
        Err(CasimirError::InvalidConfig(
            "Matsubara diagnostics need T > 0".into(),
        ))
    }
}

fn summand_prefactor(cfg: &PlateConfig) -> f64 {
    -K_B * cfg.temperature / PI / (2.0 * cfg.gap_a).powi(3)
}

/// Pressure summand at a continuous Matsubara index `m` (full weight).
fn summand_at(cfg: &PlateConfig, m: f64, settings: &QuadratureSettings) -> Result<[f64; 2]> {
    let kernel = PlateKernel {
        cfg,
        quantity: Quantity::Pressure,
    };
    let zeta = m * matsubara_spacing(cfg.temperature);
    let est = mode_integral(&kernel, zeta, m == 0.0, settings)?;
    let pref = summand_prefactor(cfg);
    Ok([pref * est.value[0], pref * est.value[1]])
}

/// The m-th term of the pressure sum at full weight: (f_total, f_TE), Pa.
/// The half weight of m = 0 is applied by the summation, not here.
pub fn matsubara_summand(cfg: &PlateConfig, m: usize) -> Result<(f64, f64)> {
    require_thermal(cfg)?;
    let [te, tm] = summand_at(cfg, m as f64, &cfg.quad.inner())?;
    Ok((te + tm, te))
}

/// The TE summand at ζ → 0 with the limits taken in the other order (ε → ∞
/// first): every conducting plate then reflects TE perfectly. For two
/// conductors this equals −ζ(3)k_BT/(4πa³), the value the ideal-metal
/// summand approaches as ζ_m → 0, in contrast to the zero a Drude metal
/// contributes at m = 0.
pub fn te_zero_mode_continuation(cfg: &PlateConfig) -> Result<f64> {
    require_thermal(cfg)?;
    let conductor = |m: &crate::DielectricModel| m.static_permittivity().is_none();
    let r = if conductor(&cfg.left) && conductor(&cfg.right) { 1.0 } else { 0.0 };
    let settings = cfg.quad.inner();
    let est = try_adaptive_quad_vec(
        |y| Ok([y * y * bose(r, y)]),
        &[0.0, 1.0, 5.0, 20.0, settings.y_max],
        &settings,
    )?;
    Ok(summand_prefactor(cfg) * est.value[0])
}

/// One point of the continuous-frequency integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandSample {
    pub zeta: f64,
    pub k_perp: f64,
    pub te: f64,
    pub tm: f64,
}

/// I_q(ζ, k⊥) = −(ħ/2π²) k⊥κ₀ R_q e^{−2κ₀a}/(1 − R_q e^{−2κ₀a}), so that the
/// zero-temperature pressure is ∫dζ ∫dk⊥ (I_TE + I_TM). Rows are ζ-major.
pub fn integrand_grid(
    cfg: &PlateConfig,
    zeta_grid: &[f64],
    kperp_grid: &[f64],
) -> Result<Vec<IntegrandSample>> {
    cfg.validate()?;
    let mut out = Vec::with_capacity(zeta_grid.len() * kperp_grid.len());
    let pref = -HBAR / (2.0 * PI * PI);
    for &zeta in zeta_grid {
        for &k in kperp_grid {
            if !(zeta >= 0.0) || !(k >= 0.0) || (zeta == 0.0 && k == 0.0) {
                return Err(CasimirError::Domain(format!(
                    "integrand needs zeta >= 0, k_perp >= 0, not both zero (got {zeta}, {k})"
                )));
            }
            let kappa0 = (k * k + (zeta / C).powi(2)).sqrt();
            let (rte, rtm) = cfg.reflection_products(zeta, zeta == 0.0, k, kappa0)?;
            let y = 2.0 * cfg.gap_a * kappa0;
            let w = pref * k * kappa0;
            out.push(IntegrandSample {
                zeta,
                k_perp: k,
                te: w * bose(rte, y),
                tm: w * bose(rtm, y),
            });
        }
    }
    Ok(out)
}

/// Euler–Maclaurin representation of the pressure sum next to the direct sum.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerMaclaurinCheck {
    /// Σ′ evaluated term by term, Pa.
    pub direct: f64,
    pub em: EulerMaclaurin,
}

impl EulerMaclaurinCheck {
    pub fn relative_difference(&self) -> f64 {
        (self.em.value - self.direct).abs() / self.direct.abs()
    }
}

/// Σ′_m f(m) ≈ ∫₀^∞ f dm − Σ_k B_{2k}/(2k)! f^{(2k−1)}(0) for the pressure
/// summand f, with odd derivatives from one-sided differences of width `step`
/// (in units of the Matsubara index). Only meaningful for smooth summands.
pub fn euler_maclaurin_pressure(
    cfg: &PlateConfig,
    k_terms: usize,
    step: f64,
) -> Result<EulerMaclaurinCheck> {
    require_thermal(cfg)?;
    let tight = cfg.quad.with_rel_tol(cfg.quad.rel_tol.min(1e-10));
    let inner = tight.inner();
    let t = 2.0 * cfg.gap_a * matsubara_spacing(cfg.temperature) / C;
    let upper = tight.y_max / t;
    let first_error: RefCell<Option<CasimirError>> = RefCell::new(None);
    let f = |m: f64| match summand_at(cfg, m, &inner) {
        Ok([te, tm]) => te + tm,
        Err(e) => {
            first_error.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let mut breakpoints: Vec<f64> = (1..=6).rev().map(|k| upper * 10f64.powi(-k)).collect();
    breakpoints.push(1.0);
    breakpoints.sort_by(f64::total_cmp);
    let em = euler_maclaurin(
        f,
        upper,
        &breakpoints,
        &OddDerivatives::FiniteDifference { step },
        &tight,
        k_terms,
    )?;
    if let Some(e) = first_error.into_inner() {
        return Err(e);
    }
    let direct = pressure(&PlateConfig {
        quad: tight,
        ..cfg.clone()
    })?
    .total;
    Ok(EulerMaclaurinCheck { direct, em })
}
