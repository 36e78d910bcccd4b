//! Physical constants (CODATA 2018 exact / recommended values) and unit helpers.

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const C: f64 = 2.997_924_58e8;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;
/// Elementary charge, C.
pub const E_CHARGE: f64 = 1.602_176_634e-19;

/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Tag written into output manifests.
pub const CONSTANTS_VERSION: &str = "CODATA2018";

/// Angular frequency (rad/s) of a photon with energy `ev` electron-volts.
pub fn ev_to_rad_per_s(ev: f64) -> f64 {
    ev * E_CHARGE / HBAR
}

/// First Matsubara frequency ζ₁ = 2π k_B T / ħ.
pub fn matsubara_spacing(temperature: f64) -> f64 {
    2.0 * std::f64::consts::PI * K_B * temperature / HBAR
}

/// Casimir's ideal-conductor pressure −π²ħc/(240 a⁴).
pub fn casimir_pressure(a: f64) -> f64 {
    -std::f64::consts::PI.powi(2) * HBAR * C / (240.0 * a.powi(4))
}

/// Ideal-conductor free energy per area −π²ħc/(720 a³).
pub fn casimir_free_energy(a: f64) -> f64 {
    -std::f64::consts::PI.powi(2) * HBAR * C / (720.0 * a.powi(3))
}

/// Dimensionless a·k_B T/(ħc).
pub fn reduced_temperature(a: f64, temperature: f64) -> f64 {
    a * K_B * temperature / (HBAR * C)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ev_conversion() {
        let w = ev_to_rad_per_s(9.03);
        assert!((w / 1.371_898e16 - 1.0).abs() < 1e-6, "{w}");
    }

    #[test]
    fn casimir_at_one_micron() {
        let p = casimir_pressure(1e-6);
        assert!((p / -1.3002e-3 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn thermal_length_at_room_temperature() {
        // ħc/k_B T at 300 K is 7.63 µm
        let lt = HBAR * C / (K_B * 300.0);
        assert!((lt - 7.63e-6).abs() < 0.01e-6);
    }
}
