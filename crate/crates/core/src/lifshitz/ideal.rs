//! Closed forms for perfect conductors, the modified-ideal-metal corrections
//! and the proximity-force approximation.

use std::f64::consts::PI;

use super::{free_energy, PlateConfig};
use crate::constants::{casimir_pressure, reduced_temperature, C, HBAR, K_B, ZETA3};
use crate::error::{CasimirError, Result};
use crate::numerics::CompensatedSum;

/// Which ideal-metal expression [`ideal_pressure`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealForm {
    /// The Matsubara sum, each term in closed form.
    ExactSum,
    /// −ζ(3)k_BT/(4πa³) − (k_BT/2πa³)(1 + t + t²/2)e^{−t}, t = 4πa k_BT/(ħc).
    HighT,
    /// P_C[1 + (16/3)u⁴ − (240/π)u e^{−π/u}], u = a k_BT/(ħc).
    LowT,
}

// Bernoulli numbers B_0 … B_16 (odd ones beyond B_1 vanish).
const BERNOULLI: [f64; 17] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
];

/// ∫_x^∞ y²/(e^y − 1) dy.
pub(crate) fn bose_tail(x: f64) -> f64 {
    if x <= 0.0 {
        return 2.0 * ZETA3;
    }
    if x < 0.5 {
        // y²/(e^y−1) = Σ B_n yⁿ⁺¹/n!, convergent for |y| < 2π.
        let mut head = 0.0;
        let mut factorial = 1.0;
        for (n, b) in BERNOULLI.iter().enumerate() {
            if n > 0 {
                factorial *= n as f64;
            }
            head += b * x.powi(n as i32 + 2) / ((n as f64 + 2.0) * factorial);
        }
        return 2.0 * ZETA3 - head;
    }
    let mut sum = CompensatedSum::new();
    let mut n = 1.0f64;
    loop {
        let term = (-n * x).exp() * (x * x / n + 2.0 * x / (n * n) + 2.0 / (n * n * n));
        sum.add(term);
        if term < 1e-18 * sum.value() {
            return sum.value();
        }
        n += 1.0;
    }
}

fn check_geometry(a: f64, temperature: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() || !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(CasimirError::Domain(format!(
            "need a > 0 and T >= 0 (got a = {a}, T = {temperature})"
        )));
    }
    Ok(())
}

/// Pressure between perfect conductors, Pa.
///
/// The exact sum is P = −(k_BT/4πa³) Σ′_m ∫_{mt}^∞ y²/(e^y − 1) dy. Below
/// t = 10⁻⁶ it falls back to the low-temperature series, whose neglected
/// terms are then below double precision.
pub fn ideal_pressure(a: f64, temperature: f64, form: IdealForm) -> Result<f64> {
    check_geometry(a, temperature)?;
    let kt = K_B * temperature;
    let t = 4.0 * PI * a * kt / (HBAR * C);
    let u = reduced_temperature(a, temperature);
    let low_t = || {
        let exp_term = if u > 0.0 { u * (-PI / u).exp() } else { 0.0 };
        casimir_pressure(a) * (1.0 + 16.0 / 3.0 * u.powi(4) - 240.0 / PI * exp_term)
    };
    Ok(match form {
        IdealForm::LowT => low_t(),
        IdealForm::HighT => {
            -ZETA3 * kt / (4.0 * PI * a.powi(3))
                - kt / (2.0 * PI * a.powi(3)) * (1.0 + t + 0.5 * t * t) * (-t).exp()
        }
        IdealForm::ExactSum => {
            if t < 1e-6 {
                low_t()
            } else {
                let mut sum = CompensatedSum::new();
                sum.add(0.5 * bose_tail(0.0));
                let mut m = 1.0f64;
                loop {
                    let term = bose_tail(m * t);
                    sum.add(term);
                    if term < 1e-18 * sum.value() {
                        break;
                    }
                    m += 1.0;
                }
                -kt / (4.0 * PI * a.powi(3)) * sum.value()
            }
        }
    })
}

/// −π²ħc/(720a³) − ζ(3)(k_BT)³/(2πħ²c²) + π²(k_BT)⁴a/(45ħ³c³), valid for
/// a k_BT/(ħc) ≪ 1.
pub fn ideal_low_t_free_energy(a: f64, temperature: f64) -> f64 {
    let kt = K_B * temperature;
    let hc = HBAR * C;
    -PI * PI * hc / (720.0 * a.powi(3)) - ZETA3 * kt.powi(3) / (2.0 * PI * hc * hc)
        + PI * PI * kt.powi(4) * a / (45.0 * hc.powi(3))
}

/// −∂/∂T of [`ideal_low_t_free_energy`]; vanishes as T → 0.
pub fn ideal_low_t_entropy(a: f64, temperature: f64) -> f64 {
    let hc = HBAR * C;
    3.0 * ZETA3 * K_B.powi(3) * temperature.powi(2) / (2.0 * PI * hc * hc)
        - 4.0 * PI * PI * K_B.powi(4) * temperature.powi(3) * a / (45.0 * hc.powi(3))
}

/// Consequences of dropping the TE zero mode from the ideal metal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MimCorrections {
    /// Low-temperature pressure shift +ζ(3)k_BT/(8πa³), Pa.
    pub linear_pressure_term: f64,
    /// High-temperature limit −ζ(3)k_BT/(8πa³), Pa: half the ideal value.
    pub high_t_pressure: f64,
    /// P/P_C ≈ 1 − (30ζ(3)/π³)·a k_BT/(ħc).
    pub ratio_to_pc: f64,
}

pub fn mim_corrections(a: f64, temperature: f64) -> Result<MimCorrections> {
    check_geometry(a, temperature)?;
    if temperature == 0.0 {
        return Err(CasimirError::Domain("MIM corrections need T > 0".into()));
    }
    let linear = ZETA3 * K_B * temperature / (8.0 * PI * a.powi(3));
    Ok(MimCorrections {
        linear_pressure_term: linear,
        high_t_pressure: -linear,
        ratio_to_pc: 1.0 - 30.0 * ZETA3 / PI.powi(3) * reduced_temperature(a, temperature),
    })
}

/// Proximity-force sphere–plate force 2πR·F(a), N (negative = attraction).
///
/// With `ideal_expansion` the modified-ideal-metal low-temperature series
/// −π³ħcR/(360a³)[1 − 45ζ(3)u/π³ + 360ζ(3)u³/π³ − 16u⁴], u = a k_BT/(ħc), is
/// returned instead. The approximation needs R ≫ a; see [`pfa_applicable`].
pub fn sphere_plate_force(radius: f64, cfg: &PlateConfig, ideal_expansion: bool) -> Result<f64> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(CasimirError::Domain(format!("radius must be positive, got {radius}")));
    }
    cfg.validate()?;
    if ideal_expansion {
        let a = cfg.gap_a;
        let u = reduced_temperature(a, cfg.temperature);
        let pi3 = PI.powi(3);
        let bracket = 1.0 - 45.0 * ZETA3 * u / pi3 + 360.0 * ZETA3 * u.powi(3) / pi3
            - 16.0 * u.powi(4);
        return Ok(-pi3 * HBAR * C * radius / (360.0 * a.powi(3)) * bracket);
    }
    Ok(2.0 * PI * radius * free_energy(cfg)?)
}

/// Whether R ≥ 10a, the rule of thumb for the proximity-force approximation.
pub fn pfa_applicable(radius: f64, a: f64) -> bool {
    radius >= 10.0 * a
}
