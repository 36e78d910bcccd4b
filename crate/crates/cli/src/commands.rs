use std::fmt::Write as _;

use casimir_core::constants::{casimir_pressure, C};
use casimir_core::lifshitz::{integrand_grid, pressure, thermo};
use casimir_core::multilayer::{five_layer_pressure, ideal_reference};
use casimir_core::{
    DielectricModel, FiveLayerConfig, PlateConfig, QuadratureSettings, ZeroModePolicy,
};

use crate::args::{
    IntegrandArgs, PlateArgs, PressureArgs, SlabArgs, SweepArgs, SweepVar, ThermoArgs,
};
use crate::error::{CliError, CliResult};
use crate::manifest::{fmt_f64, RunManifest};
use crate::units::{parse_length, parse_temperature};

/// Clearance kept between the slab and a wall at the end of the default δ sweep.
const SLAB_WALL_CLEARANCE: f64 = 50e-9;

pub const PRESSURE_COLUMNS: &str = "a_m,T_K,P_Pa,P_over_PC,P_TE_Pa,P_TM_Pa,est_error_Pa";
pub const SLAB_COLUMNS: &str = "delta_m,P_Pa,P_over_PCref,est_error_Pa";
pub const INTEGRAND_COLUMNS: &str = "zeta_rad_per_s,kperp_per_m,I_TE,I_TM,I_total";
pub const THERMO_COLUMNS: &str =
    "a_m,T_K,F_J_per_m2,S_J_per_m2K,P_check_Pa,P_Pa,F_err,S_err,P_check_err,P_err";

/// Header plus CSV body.
pub struct Output {
    pub manifest: RunManifest,
    pub body: String,
}

fn row(values: &[f64]) -> String {
    let cells: Vec<String> = values.iter().map(|&v| fmt_f64(v)).collect();
    cells.join(",") + "\n"
}

fn plate_config(
    plates: &PlateArgs,
    a: f64,
    t: f64,
    quad: QuadratureSettings,
) -> CliResult<PlateConfig> {
    let policy: ZeroModePolicy = plates.policy.into();
    let right = plates.model_right.clone().unwrap_or_else(|| plates.model.clone());
    if policy != ZeroModePolicy::FromModel && !(plates.model.is_ideal() && right.is_ideal()) {
        return Err(CliError::usage(format!(
            "--policy {} is only available with --model ideal",
            policy.name()
        )));
    }
    Ok(PlateConfig::new(plates.model.clone(), right, a, t)?
        .with_policy(policy)?
        .with_quad(quad)?)
}

fn describe_plates(m: &mut RunManifest, cfg: &PlateConfig) {
    m.push("model_left", cfg.left.describe());
    m.push("model_right", cfg.right.describe());
    m.push("policy", cfg.policy.name());
}

fn finish(m: &mut RunManifest, quad: &QuadratureSettings) {
    m.push_settings(quad);
    m.push_constants();
}

fn pressure_row(cfg: &PlateConfig) -> CliResult<String> {
    let p = pressure(cfg)?;
    Ok(row(&[
        cfg.gap_a,
        cfg.temperature,
        p.total,
        p.total / casimir_pressure(cfg.gap_a),
        p.te_part,
        p.tm_part,
        p.est_error,
    ]))
}

pub fn cmd_pressure(args: &PressureArgs, quad: QuadratureSettings, mut m: RunManifest) -> CliResult<Output> {
    let cfg = plate_config(&args.plates, args.a, args.t, quad)?;
    describe_plates(&mut m, &cfg);
    m.push_f64("a_m", cfg.gap_a);
    m.push_f64("T_K", cfg.temperature);
    finish(&mut m, &quad);
    let body = format!("{PRESSURE_COLUMNS}\n{}", pressure_row(&cfg)?);
    Ok(Output { manifest: m, body })
}

/// `points` values from `from` to `to`, both included.
pub fn grid(from: f64, to: f64, points: usize, log: bool) -> CliResult<Vec<f64>> {
    if points < 2 {
        return Err(CliError::usage("a grid needs at least 2 points"));
    }
    if !(from < to) {
        return Err(CliError::usage(format!("grid needs from < to (got {from} .. {to})")));
    }
    if log && !(from > 0.0) {
        return Err(CliError::usage("a logarithmic grid needs from > 0"));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i == 0 {
                from
            } else if i == points - 1 {
                to
            } else if log {
                from * (to / from).powf(i as f64 / last)
            } else {
                from + (to - from) * (i as f64 / last)
            }
        })
        .collect())
}

pub fn cmd_sweep(args: &SweepArgs, quad: QuadratureSettings, mut m: RunManifest) -> CliResult<Output> {
    let parse = |s: &str| match args.var {
        SweepVar::T => parse_temperature(s),
        SweepVar::A | SweepVar::Delta => parse_length(s),
    };
    let values = grid(parse(&args.from)?, parse(&args.to)?, args.points, args.log)?;
    m.push(
        "sweep_var",
        match args.var {
            SweepVar::A => "a",
            SweepVar::T => "T",
            SweepVar::Delta => "delta",
        },
    );
    m.push("sweep_spacing", if args.log { "log" } else { "linear" });
    m.push("sweep_points", args.points);
    let mut body = String::new();
    match args.var {
        SweepVar::A | SweepVar::T => {
            let (a0, t0) = match args.var {
                SweepVar::A => (values[0], need(args.t, "--T")?),
                _ => (need(args.a, "--a")?, values[0]),
            };
            let base = plate_config(&args.plates, a0, t0, quad)?;
            describe_plates(&mut m, &base);
            if args.var == SweepVar::A {
                m.push_f64("T_K", t0);
            } else {
                m.push_f64("a_m", a0);
            }
            m.push_f64("sweep_from", values[0]);
            m.push_f64("sweep_to", values[values.len() - 1]);
            body.push_str(PRESSURE_COLUMNS);
            body.push('\n');
            for &v in &values {
                let cfg = match args.var {
                    SweepVar::A => base.with_gap(v)?,
                    _ => base.with_temperature(v)?,
                };
                body.push_str(&pressure_row(&cfg)?);
            }
        }
        SweepVar::Delta => {
            if args.plates.model_right.is_some() || args.plates.policy != crate::args::PolicyArg::FromModel {
                return Err(CliError::usage(
                    "--model-right and --policy do not apply to slab sweeps",
                ));
            }
            let cfg = slab_config(
                need(args.cavity, "--cavity")?,
                need(args.slab, "--slab")?,
                &args.plates.model,
                args.slab_model.as_ref(),
                args.t.unwrap_or(0.0),
                quad,
            )?;
            describe_slab(&mut m, &cfg);
            m.push_f64("sweep_from", values[0]);
            m.push_f64("sweep_to", values[values.len() - 1]);
            body = slab_rows(&cfg, &values)?;
        }
    }
    finish(&mut m, &quad);
    Ok(Output { manifest: m, body })
}

fn need(v: Option<f64>, flag: &str) -> CliResult<f64> {
    v.ok_or_else(|| CliError::usage(format!("{flag} is required for this sweep")))
}

fn slab_config(
    cavity: f64,
    slab: f64,
    wall: &DielectricModel,
    slab_model: Option<&DielectricModel>,
    t: f64,
    quad: QuadratureSettings,
) -> CliResult<FiveLayerConfig> {
    let slab_model = slab_model.cloned().unwrap_or_else(|| wall.clone());
    Ok(FiveLayerConfig::new(cavity, slab, 0.0, wall.clone(), slab_model, t)?.with_quad(quad)?)
}

fn describe_slab(m: &mut RunManifest, cfg: &FiveLayerConfig) {
    m.push("model_wall", cfg.wall_model.describe());
    m.push("model_slab", cfg.slab_model.describe());
    m.push_f64("cavity_c_m", cfg.cavity_c);
    m.push_f64("slab_b_m", cfg.slab_b);
    m.push_f64("T_K", cfg.temperature);
}

/// P_over_PCref is 0/0 = nan at δ = 0, where both pressures vanish.
fn slab_rows(base: &FiveLayerConfig, deltas: &[f64]) -> CliResult<String> {
    let mut body = format!("{SLAB_COLUMNS}\n");
    for &d in deltas {
        let cfg = base.with_delta(d)?;
        let p = five_layer_pressure(&cfg)?;
        let reference = ideal_reference(cfg.gap_h(), d)?;
        body.push_str(&row(&[d, p.total, p.total / reference, p.est_error]));
    }
    Ok(body)
}

pub fn cmd_slab(args: &SlabArgs, quad: QuadratureSettings, mut m: RunManifest) -> CliResult<Output> {
    let base = slab_config(
        args.cavity,
        args.slab,
        &args.model,
        args.slab_model.as_ref(),
        args.t,
        quad,
    )?;
    let deltas = match (args.delta, args.delta_sweep) {
        (Some(d), false) => vec![d],
        (None, true) => {
            let end = 0.5 * base.gap_h() - SLAB_WALL_CLEARANCE;
            if !(end > 0.0) {
                return Err(CliError::usage(format!(
                    "cavity leaves no room for a sweep: (c - b)/2 must exceed {SLAB_WALL_CLEARANCE:e} m"
                )));
            }
            grid(0.0, end, args.points, false)?
        }
        _ => return Err(CliError::usage("give either --delta or --delta-sweep")),
    };
    describe_slab(&mut m, &base);
    m.push("delta_points", deltas.len());
    finish(&mut m, &quad);
    let body = slab_rows(&base, &deltas)?;
    Ok(Output { manifest: m, body })
}

pub fn cmd_integrand(args: &IntegrandArgs, quad: QuadratureSettings, mut m: RunManifest) -> CliResult<Output> {
    let a = args.a;
    let cfg = plate_config(&args.plates, a, 0.0, quad)?;
    let zeta_max = args.zeta_max.unwrap_or(30.0 * C / a);
    let k_min = args.k_min.unwrap_or(1e-3 / a);
    let k_max = args.k_max.unwrap_or(30.0 / a);
    let log = !args.linear;
    let zetas = grid(args.zeta_min, zeta_max, args.zeta_points, log)?;
    let ks = grid(k_min, k_max, args.k_points, log)?;
    describe_plates(&mut m, &cfg);
    m.push_f64("a_m", a);
    m.push_f64("T_K", 0.0);
    m.push_f64("zeta_min", args.zeta_min);
    m.push_f64("zeta_max", zeta_max);
    m.push("zeta_points", args.zeta_points);
    m.push_f64("k_min", k_min);
    m.push_f64("k_max", k_max);
    m.push("k_points", args.k_points);
    m.push("grid", if log { "log" } else { "linear" });
    finish(&mut m, &quad);
    let samples = integrand_grid(&cfg, &zetas, &ks)?;
    let mut body = String::with_capacity(samples.len() * 80);
    let _ = writeln!(body, "{INTEGRAND_COLUMNS}");
    for s in samples {
        body.push_str(&row(&[s.zeta, s.k_perp, s.te, s.tm, s.te + s.tm]));
    }
    Ok(Output { manifest: m, body })
}

pub fn cmd_thermo(args: &ThermoArgs, quad: QuadratureSettings, mut m: RunManifest) -> CliResult<Output> {
    let base = plate_config(&args.plates, args.a[0], args.t[0], quad)?;
    describe_plates(&mut m, &base);
    let list = |v: &[f64]| v.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(";");
    m.push("a_m", list(&args.a));
    m.push("T_K", list(&args.t));
    finish(&mut m, &quad);
    let mut body = format!("{THERMO_COLUMNS}\n");
    for &a in &args.a {
        for &t in &args.t {
            let cfg = base.with_gap(a)?.with_temperature(t)?;
            let th = thermo(&cfg)?;
            let p = pressure(&cfg)?;
            body.push_str(&row(&[
                a,
                t,
                th.free_energy,
                th.entropy.unwrap_or(f64::NAN),
                th.pressure_check,
                p.total,
                th.free_energy_error,
                th.entropy_error.unwrap_or(f64::NAN),
                th.pressure_check_error,
                p.est_error,
            ]));
        }
    }
    Ok(Output { manifest: m, body })
}
