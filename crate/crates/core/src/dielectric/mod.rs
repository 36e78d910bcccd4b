//! Permittivity models along the imaginary frequency axis.

mod impedance;
mod table;

pub use impedance::{local_impedance, surface_impedance, te_reflection_from_impedance};
pub use table::{load_table, PermittivityTable};

use std::f64::consts::PI;
use std::sync::Arc;

use crate::constants::C;
use crate::error::{CasimirError, Result};

/// Drude parameters (both rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeParams {
    pub omega_p: f64,
    pub gamma: f64,
}

impl DrudeParams {
    pub fn new(omega_p: f64, gamma: f64) -> Result<Self> {
        positive("omega_p", omega_p)?;
        positive("gamma", gamma)?;
        Ok(DrudeParams { omega_p, gamma })
    }

    /// 1 + ω_p²/(ζ(ζ+γ)).
    pub fn eps(&self, zeta: f64) -> f64 {
        1.0 + self.omega_p * self.omega_p / (zeta * (zeta + self.gamma))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CasimirError::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// ε(iζ) evaluator.
#[derive(Debug, Clone, PartialEq)]
pub enum DielectricModel {
    /// Perfect conductor, ε → ∞.
    Ideal,
    /// ε ≡ 1.
    Vacuum,
    /// 1 + ω_p²/ζ².
    Plasma { omega_p: f64 },
    /// 1 + ω_p²/(ζ(ζ+γ)).
    Drude(DrudeParams),
    /// Optical data with a Drude tail below the table and 1 + C/ζ² above it.
    Tabulated {
        table: Arc<PermittivityTable>,
        low_tail: DrudeParams,
        high_tail: f64,
    },
}

/// lim_{ζ→0} ζ² ε(iζ) / c².
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroModeLimit {
    Vanishing,
    /// Value in m⁻².
    Finite(f64),
    Infinite,
}

impl DielectricModel {
    pub fn plasma(omega_p: f64) -> Result<Self> {
        positive("omega_p", omega_p)?;
        Ok(DielectricModel::Plasma { omega_p })
    }

    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        Ok(DielectricModel::Drude(DrudeParams::new(omega_p, gamma)?))
    }

    /// The high-frequency coefficient is fixed by continuity at the last row.
    pub fn tabulated(table: PermittivityTable, low_tail: DrudeParams) -> Self {
        let (zeta_last, eps_last) = *table.rows().last().expect("validated table is non-empty");
        let high_tail = (eps_last - 1.0) * zeta_last * zeta_last;
        DielectricModel::Tabulated {
            table: Arc::new(table),
            low_tail,
            high_tail,
        }
    }

    pub fn is_ideal(&self) -> bool {
        matches!(self, DielectricModel::Ideal)
    }

    /// Short human-readable description, used in output manifests.
    pub fn describe(&self) -> String {
        match self {
            DielectricModel::Ideal => "ideal".into(),
            DielectricModel::Vacuum => "vacuum".into(),
            DielectricModel::Plasma { omega_p } => format!("plasma(omega_p={omega_p:.9e})"),
            DielectricModel::Drude(d) => {
                format!("drude(omega_p={:.9e},gamma={:.9e})", d.omega_p, d.gamma)
            }
            DielectricModel::Tabulated {
                table, low_tail, ..
            } => format!(
                "table(source={},rows={},drude_tail=({:.9e},{:.9e}))",
                table.provenance(),
                table.rows().len(),
                low_tail.omega_p,
                low_tail.gamma
            ),
        }
    }

    /// ε(iζ) for ζ > 0.
    pub fn eps_imag(&self, zeta: f64) -> Result<f64> {
        if !(zeta > 0.0) || !zeta.is_finite() {
            return Err(CasimirError::Domain(format!(
                "permittivity needs zeta > 0, got {zeta}"
            )));
        }
        Ok(match self {
            DielectricModel::Ideal => return Err(CasimirError::InfinitePermittivity),
            DielectricModel::Vacuum => 1.0,
            DielectricModel::Plasma { omega_p } => 1.0 + (omega_p / zeta).powi(2),
            DielectricModel::Drude(d) => d.eps(zeta),
            DielectricModel::Tabulated {
                table,
                low_tail,
                high_tail,
            } => {
                let rows = table.rows();
                let (z_first, _) = rows[0];
                let (z_last, _) = rows[rows.len() - 1];
                if zeta < z_first {
                    low_tail.eps(zeta)
                } else if zeta > z_last {
                    1.0 + high_tail / (zeta * zeta)
                } else {
                    table.interpolate(zeta)
                }
            }
        })
    }

    pub fn zero_mode_limit(&self) -> ZeroModeLimit {
        match self {
            DielectricModel::Ideal => ZeroModeLimit::Infinite,
            DielectricModel::Plasma { omega_p } => ZeroModeLimit::Finite((omega_p / C).powi(2)),
            DielectricModel::Vacuum
            | DielectricModel::Drude(_)
            | DielectricModel::Tabulated { .. } => ZeroModeLimit::Vanishing,
        }
    }

    /// lim_{ζ→0} ε(iζ); `None` when it diverges (every conductor).
    pub fn static_permittivity(&self) -> Option<f64> {
        match self {
            DielectricModel::Vacuum => Some(1.0),
            _ => None,
        }
    }
}

/// Drude spectral density p(ω) = (2/π)·γ/(ω² + γ²), normalised to 1 on [0, ∞).
pub fn drude_spectral(gamma: f64, omega: f64) -> Result<f64> {
    positive("gamma", gamma)?;
    if !(omega >= 0.0) {
        return Err(CasimirError::Domain(format!("omega must be >= 0, got {omega}")));
    }
    Ok(2.0 / PI * gamma / (omega * omega + gamma * gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ev_to_rad_per_s;

    pub(crate) fn gold() -> DrudeParams {
        DrudeParams::new(ev_to_rad_per_s(9.03), ev_to_rad_per_s(0.0345)).unwrap()
    }

    #[test]
    fn drude_at_gamma() {
        let g = gold();
        let eps = DielectricModel::Drude(g).eps_imag(g.gamma).unwrap();
        let expected = 1.0 + (9.03f64 / 0.0345).powi(2) / 2.0;
        assert!((eps / expected - 1.0).abs() < 1e-12);
        assert!((eps / 3.4253e4 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn plasma_at_plasma_frequency() {
        let wp = ev_to_rad_per_s(9.03);
        let eps = DielectricModel::plasma(wp).unwrap().eps_imag(wp).unwrap();
        assert!((eps - 2.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let m = DielectricModel::Drude(gold());
        assert!(matches!(m.eps_imag(0.0), Err(CasimirError::Domain(_))));
        assert!(matches!(m.eps_imag(-1.0), Err(CasimirError::Domain(_))));
        assert!(matches!(
            DielectricModel::Ideal.eps_imag(1e14),
            Err(CasimirError::InfinitePermittivity)
        ));
        assert!(DielectricModel::drude(1e16, 0.0).is_err());
        assert!(DielectricModel::plasma(-1.0).is_err());
    }

    #[test]
    fn zero_mode_classification() {
        let wp = 1e16;
        assert_eq!(
            DielectricModel::Drude(gold()).zero_mode_limit(),
            ZeroModeLimit::Vanishing
        );
        assert_eq!(DielectricModel::Ideal.zero_mode_limit(), ZeroModeLimit::Infinite);
        match DielectricModel::plasma(wp).unwrap().zero_mode_limit() {
            ZeroModeLimit::Finite(l) => assert!((l - (wp / C).powi(2)).abs() < 1e-3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spectral_density_values() {
        let g = 3.0;
        assert!((drude_spectral(g, 0.0).unwrap() - 2.0 / (PI * g)).abs() < 1e-15);
        for gamma in [1e-3, 1.0, 1e5] {
            let ratio = drude_spectral(gamma, gamma).unwrap() / drude_spectral(gamma, 0.0).unwrap();
            assert!((ratio - 0.5).abs() < 1e-15);
        }
        assert!(drude_spectral(0.0, 1.0).is_err());
        assert!(drude_spectral(1.0, -1.0).is_err());
    }
}
