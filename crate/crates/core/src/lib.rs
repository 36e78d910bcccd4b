//! Thermal Casimir pressures between planar bodies from the Lifshitz formula.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: adaptive Gauss–Kronrod quadrature, Matsubara summation with
//!   ordered (reproducible) reduction, Euler–Maclaurin evaluation and guarded
//!   finite differences.
//! * [`dielectric`]: permittivity models on the imaginary frequency axis,
//!   tabulated optical data, zero-frequency limits and surface impedances.
//! * [`lifshitz`]: three-layer (plate–gap–plate) pressure, free energy and
//!   entropy, ideal-metal closed forms and the proximity-force approximation.
//! * [`multilayer`]: the five-layer wall–gap–slab–gap–wall cavity.
//!
//! All quantities are SI: rad/s, m, K, Pa, J/m².

pub mod constants;
pub mod dielectric;
mod error;
pub mod lifshitz;
pub mod multilayer;
pub mod numerics;

pub use dielectric::{DielectricModel, DrudeParams, PermittivityTable, ZeroModeLimit};
pub use error::{CasimirError, Result};
pub use lifshitz::{
    IdealForm, MimCorrections, PlateConfig, PressureResult, ThermoResult, ZeroModePolicy,
};
pub use multilayer::FiveLayerConfig;
pub use numerics::{QuadratureSettings, SumDiagnostics};
