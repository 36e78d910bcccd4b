//! Fixtures shared by the benchmarks.

use casimir_core::constants::ev_to_rad_per_s;
use casimir_core::{DielectricModel, PlateConfig, ZeroModePolicy};

/// Drude gold: ω_p = 9.03 eV, γ = 0.0345 eV.
pub fn gold() -> DielectricModel {
    DielectricModel::drude(ev_to_rad_per_s(9.03), ev_to_rad_per_s(0.0345))
        .expect("positive parameters")
}

pub fn gold_plates(a: f64, temperature: f64) -> PlateConfig {
    PlateConfig::symmetric(gold(), a, temperature).expect("valid configuration")
}

pub fn ideal_plates(a: f64, temperature: f64) -> PlateConfig {
    PlateConfig::symmetric(DielectricModel::Ideal, a, temperature)
        .and_then(|c| c.with_policy(ZeroModePolicy::ForceIdealBoth))
        .expect("valid configuration")
}
