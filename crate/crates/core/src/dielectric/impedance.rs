//! Surface-impedance formulation of the TE boundary condition.

use super::DielectricModel;
use crate::constants::C;
use crate::error::{CasimirError, Result};

/// Z(iζ, k⊥) = −(ζ/c) / √(ζ²[ε(iζ)−1]/c² + κ₀²), κ₀² = ζ²/c² + k⊥².
///
/// Keeps the transverse-momentum dependence; the ideal metal (Z = 0) is rejected.
pub fn surface_impedance(model: &DielectricModel, zeta: f64, k_perp: f64) -> Result<f64> {
    if model.is_ideal() {
        return Err(CasimirError::Unsupported(
            "surface impedance of an ideal conductor is identically zero".into(),
        ));
    }
    if !(k_perp >= 0.0) {
        return Err(CasimirError::Domain(format!("k_perp must be >= 0, got {k_perp}")));
    }
    let eps = model.eps_imag(zeta)?;
    let q = zeta / C;
    let kappa0_sq = q * q + k_perp * k_perp;
    Ok(-q / (q * q * (eps - 1.0) + kappa0_sq).sqrt())
}

/// The k⊥-free normal-skin-effect impedance −√(γζ)/ω_p of a Drude metal.
///
/// Agrees with [`surface_impedance`] only when k⊥² ≪ ζ²ε/c².
pub fn local_impedance(model: &DielectricModel, zeta: f64) -> Result<f64> {
    let DielectricModel::Drude(d) = model else {
        return Err(CasimirError::Unsupported(
            "local impedance is defined for the Drude model only".into(),
        ));
    };
    if !(zeta > 0.0) {
        return Err(CasimirError::Domain(format!("zeta must be > 0, got {zeta}")));
    }
    Ok(-(d.gamma * zeta).sqrt() / d.omega_p)
}

/// r^TE = −(ζ/c + Zκ₀)/(ζ/c − Zκ₀).
///
/// With the impedance of [`surface_impedance`] this equals −Δ_TE, the opposite
/// sign convention to the bulk coefficient; only r² enters pressures.
pub fn te_reflection_from_impedance(z: f64, zeta: f64, k_perp: f64) -> f64 {
    let q = zeta / C;
    let kappa0 = (q * q + k_perp * k_perp).sqrt();
    -(q + z * kappa0) / (q - z * kappa0)
}
