//! The model mini-language:
//!
//! ```text
//! ideal | vacuum | plasma:<wp> | drude:<wp>,<gamma> | table:<path>,drude-tail:<wp>,<gamma>
//! ```
//!
//! Frequencies take `eV` or `rad/s` suffixes. Relative table paths that do not
//! exist are searched for in the directories listed in `CASIMIR_TABLE_DIR`.

use std::env;
use std::fs::File;
use std::path::{Path, PathBuf};

use casimir_core::dielectric::load_table;
use casimir_core::{DielectricModel, DrudeParams};

use crate::error::{CliError, CliResult};
use crate::units::parse_frequency;

pub const TABLE_DIR_VAR: &str = "CASIMIR_TABLE_DIR";

const TAIL_MARKER: &str = ",drude-tail:";

pub fn parse_model(spec: &str) -> CliResult<DielectricModel> {
    let spec = spec.trim();
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let model = match kind {
        "ideal" | "vacuum" if !args.is_empty() => {
            return Err(CliError::usage(format!("model '{kind}' takes no parameters")))
        }
        "ideal" => DielectricModel::Ideal,
        "vacuum" => DielectricModel::Vacuum,
        "plasma" => DielectricModel::plasma(parse_frequency(args)?)?,
        "drude" => {
            let (wp, gamma) = pair(args, "drude:<wp>,<gamma>")?;
            DielectricModel::drude(wp, gamma)?
        }
        "table" => {
            let (path, tail) = args.split_once(TAIL_MARKER).ok_or_else(|| {
                CliError::usage(
                    "table models need a low-frequency tail: table:<path>,drude-tail:<wp>,<gamma>",
                )
            })?;
            let (wp, gamma) = pair(tail, "drude-tail:<wp>,<gamma>")?;
            let path = resolve_table(path)?;
            let file = File::open(&path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let table = load_table(file)?;
            DielectricModel::tabulated(table, DrudeParams::new(wp, gamma)?)
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown model '{other}' (expected ideal, vacuum, plasma, drude or table)"
            )))
        }
    };
    Ok(model)
}

fn pair(args: &str, shape: &str) -> CliResult<(f64, f64)> {
    let (a, b) = args
        .split_once(',')
        .ok_or_else(|| CliError::usage(format!("expected {shape}, got '{args}'")))?;
    Ok((parse_frequency(a)?, parse_frequency(b)?))
}

fn resolve_table(path: &str) -> CliResult<PathBuf> {
    let direct = Path::new(path);
    if direct.exists() || direct.is_absolute() {
        return Ok(direct.to_path_buf());
    }
    if let Some(dirs) = env::var_os(TABLE_DIR_VAR) {
        for dir in env::split_paths(&dirs) {
            let candidate = dir.join(path);
            if candidate.exists() {
                return Ok(candidate);
            }
        }
    }
    Err(CliError::usage(format!(
        "table '{path}' not found (searched the working directory and {TABLE_DIR_VAR})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_analytic_models() {
        assert_eq!(parse_model("ideal").unwrap(), DielectricModel::Ideal);
        assert_eq!(parse_model("vacuum").unwrap(), DielectricModel::Vacuum);
        match parse_model("drude:9.03eV,0.0345eV").unwrap() {
            DielectricModel::Drude(d) => {
                assert!((d.omega_p / 1.371_898e16 - 1.0).abs() < 1e-6);
                assert!(d.gamma > 5e13 && d.gamma < 5.3e13);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_model("plasma:1e16rad/s").unwrap(),
            DielectricModel::Plasma { omega_p: 1e16 }
        );
    }

    #[test]
    fn rejects_malformed_models() {
        for bad in ["gold", "drude:9eV", "plasma:", "ideal:1", "table:x.csv", "drude:-1eV,1eV"] {
            assert!(parse_model(bad).is_err(), "{bad}");
        }
    }
}
