use std::path::PathBuf;

use casimir_core::{DielectricModel, QuadratureSettings, ZeroModePolicy};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::model::parse_model;
use crate::units::{parse_frequency, parse_length, parse_temperature, parse_wavenumber};

fn length(s: &str) -> Result<f64, String> {
    parse_length(s).map_err(|e| e.to_string())
}

fn temperature(s: &str) -> Result<f64, String> {
    parse_temperature(s).map_err(|e| e.to_string())
}

fn frequency(s: &str) -> Result<f64, String> {
    parse_frequency(s).map_err(|e| e.to_string())
}

fn wavenumber(s: &str) -> Result<f64, String> {
    parse_wavenumber(s).map_err(|e| e.to_string())
}

fn model(s: &str) -> Result<DielectricModel, String> {
    parse_model(s).map_err(|e| e.to_string())
}

/// Thermal Casimir pressures, free energies and entropies from the Lifshitz formula.
///
/// Output is CSV preceded by `# key=value` lines holding the fully resolved
/// run configuration. Lengths accept m/mm/um/nm, temperatures K, frequencies
/// eV or rad/s.
#[derive(Debug, Parser)]
#[command(name = "casimir", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Target relative accuracy of every integral and sum.
    #[arg(long, global = true, default_value_t = 1e-5)]
    pub rel_tol: f64,

    /// Cut-off of the damped integration variable 2aκ₀.
    #[arg(long, global = true, default_value_t = 60.0)]
    pub y_max: f64,

    /// Panel budget for one adaptive integration.
    #[arg(long, global = true, default_value_t = 2000)]
    pub max_subdivisions: usize,

    /// Write to this file instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Omit the timestamp so identical runs give byte-identical files.
    #[arg(long, global = true)]
    pub deterministic: bool,
}

impl GlobalOpts {
    pub fn settings(&self) -> QuadratureSettings {
        QuadratureSettings {
            rel_tol: self.rel_tol,
            y_max: self.y_max,
            max_subdivisions: self.max_subdivisions,
            ..QuadratureSettings::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pressure between two plates.
    Pressure(PressureArgs),
    /// Pressure over a grid of gaps, temperatures or slab offsets.
    Sweep(SweepArgs),
    /// Zero-temperature TE/TM integrand on a (ζ, k⊥) grid.
    Integrand(IntegrandArgs),
    /// Net pressure on a slab inside a cavity.
    Slab(SlabArgs),
    /// Free energy, entropy and the −∂F/∂a pressure check.
    Thermo(ThermoArgs),
    /// Re-run the command recorded in the header of an earlier output.
    Rerun {
        /// File produced by a previous run.
        file: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    FromModel,
    ForceIdealBoth,
    ExcludeTe,
}

impl From<PolicyArg> for ZeroModePolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::FromModel => ZeroModePolicy::FromModel,
            PolicyArg::ForceIdealBoth => ZeroModePolicy::ForceIdealBoth,
            PolicyArg::ExcludeTe => ZeroModePolicy::ExcludeTE,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PlateArgs {
    /// ideal | vacuum | plasma:<wp> | drude:<wp>,<gamma> | table:<path>,drude-tail:<wp>,<gamma>
    #[arg(long, value_parser = model)]
    pub model: DielectricModel,

    /// Second plate, if different from the first.
    #[arg(long, value_parser = model)]
    pub model_right: Option<DielectricModel>,

    /// Zero-frequency treatment; anything but from-model needs ideal plates.
    #[arg(long, value_enum, default_value_t = PolicyArg::FromModel)]
    pub policy: PolicyArg,
}

#[derive(Debug, Args)]
pub struct PressureArgs {
    #[command(flatten)]
    pub plates: PlateArgs,

    /// Plate separation.
    #[arg(long = "a", value_parser = length)]
    pub a: f64,

    /// Temperature; 0 uses the continuous-frequency formula.
    #[arg(long = "T", value_parser = temperature)]
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    A,
    #[value(name = "T", alias = "t")]
    T,
    Delta,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Swept quantity.
    #[arg(long, value_enum)]
    pub var: SweepVar,

    /// First grid value (units of the swept quantity).
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,

    /// Last grid value.
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,

    #[arg(long, default_value_t = 11)]
    pub points: usize,

    /// Logarithmic instead of linear spacing.
    #[arg(long)]
    pub log: bool,

    #[command(flatten)]
    pub plates: PlateArgs,

    /// Plate separation (fixed unless --var a).
    #[arg(long = "a", value_parser = length)]
    pub a: Option<f64>,

    /// Temperature (fixed unless --var T).
    #[arg(long = "T", value_parser = temperature)]
    pub t: Option<f64>,

    /// Cavity width c for --var delta.
    #[arg(long, value_parser = length)]
    pub cavity: Option<f64>,

    /// Slab thickness b for --var delta.
    #[arg(long, value_parser = length)]
    pub slab: Option<f64>,

    /// Slab material for --var delta (default: the wall model).
    #[arg(long, value_parser = model)]
    pub slab_model: Option<DielectricModel>,
}

#[derive(Debug, Args)]
pub struct IntegrandArgs {
    #[command(flatten)]
    pub plates: PlateArgs,

    #[arg(long = "a", value_parser = length)]
    pub a: f64,

    #[arg(long, value_parser = frequency, default_value = "1e4rad/s")]
    pub zeta_min: f64,

    /// Default 30c/a.
    #[arg(long, value_parser = frequency)]
    pub zeta_max: Option<f64>,

    #[arg(long, default_value_t = 200)]
    pub zeta_points: usize,

    /// Default 1e-3/a.
    #[arg(long, value_parser = wavenumber)]
    pub k_min: Option<f64>,

    /// Default 30/a.
    #[arg(long, value_parser = wavenumber)]
    pub k_max: Option<f64>,

    #[arg(long, default_value_t = 200)]
    pub k_points: usize,

    /// Linear instead of logarithmic grids.
    #[arg(long)]
    pub linear: bool,
}

#[derive(Debug, Args)]
pub struct SlabArgs {
    /// Cavity width c (wall to wall).
    #[arg(long, value_parser = length, default_value = "3um")]
    pub cavity: f64,

    /// Slab thickness b.
    #[arg(long, value_parser = length, default_value = "500nm")]
    pub slab: f64,

    /// Wall material.
    #[arg(long, value_parser = model)]
    pub model: DielectricModel,

    /// Slab material (default: the wall model).
    #[arg(long, value_parser = model)]
    pub slab_model: Option<DielectricModel>,

    /// Single slab offset from the cavity midline.
    #[arg(long, value_parser = length, allow_hyphen_values = true, conflicts_with = "delta_sweep")]
    pub delta: Option<f64>,

    /// Sweep δ from 0 to (c − b)/2 − 50 nm.
    #[arg(long)]
    pub delta_sweep: bool,

    /// Grid points of --delta-sweep.
    #[arg(long, default_value_t = 21)]
    pub points: usize,

    #[arg(long = "T", value_parser = temperature, default_value = "0")]
    pub t: f64,
}

#[derive(Debug, Args)]
pub struct ThermoArgs {
    #[command(flatten)]
    pub plates: PlateArgs,

    /// Plate separation(s), comma separated.
    #[arg(long = "a", value_parser = length, value_delimiter = ',', required = true)]
    pub a: Vec<f64>,

    /// Temperature(s), comma separated.
    #[arg(long = "T", value_parser = temperature, value_delimiter = ',', required = true)]
    pub t: Vec<f64>,
}
