//! Tabulated ε(iζ) data.
//!
//! File format: UTF-8 text, one `zeta_rad_per_s,eps_relative` record per line,
//! ζ ascending. Blank lines and `#` comments are ignored, except that a comment
//! of the form `# source: <text>` sets the provenance tag.

use std::io::{BufRead, BufReader, Read};

use crate::error::{CasimirError, Result};

pub const MIN_ROWS: usize = 8;
pub const MIN_DECADES: f64 = 3.0;
/// Relative slack allowed when checking that ε does not increase with ζ.
pub const MONOTONE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PermittivityTable {
    rows: Vec<(f64, f64)>,
    provenance: String,
}

impl PermittivityTable {
    pub fn new(rows: Vec<(f64, f64)>, provenance: impl Into<String>) -> Result<Self> {
        Self::validate(&rows, None)?;
        Ok(PermittivityTable {
            rows,
            provenance: provenance.into(),
        })
    }

    /// `lines[i]` is the source line of `rows[i]`, used in error messages.
    fn validate(rows: &[(f64, f64)], lines: Option<&[usize]>) -> Result<()> {
        let err = |i: usize, message: String| match lines {
            Some(l) => CasimirError::TableLine {
                line: l[i],
                message,
            },
            None => CasimirError::Table(format!("row {}: {message}", i + 1)),
        };
        for (i, &(zeta, eps)) in rows.iter().enumerate() {
            if !(zeta > 0.0) || !zeta.is_finite() {
                return Err(err(i, format!("zeta must be positive and finite, got {zeta}")));
            }
            if !eps.is_finite() {
                return Err(err(i, format!("eps must be finite, got {eps}")));
            }
            if eps < 1.0 {
                return Err(err(i, format!("eps < 1 ({eps})")));
            }
            if i > 0 {
                let (z_prev, e_prev) = rows[i - 1];
                if zeta <= z_prev {
                    return Err(err(i, format!("zeta not ascending ({zeta} after {z_prev})")));
                }
                if eps > e_prev * (1.0 + MONOTONE_TOL) {
                    return Err(err(
                        i,
                        format!("eps increasing with zeta ({eps} after {e_prev})"),
                    ));
                }
            }
        }
        if rows.len() < MIN_ROWS {
            return Err(CasimirError::Table(format!(
                "fewer than {MIN_ROWS} rows ({})",
                rows.len()
            )));
        }
        let decades = (rows[rows.len() - 1].0 / rows[0].0).log10();
        if decades < MIN_DECADES {
            return Err(CasimirError::Table(format!(
                "zeta spans {decades:.2} decades, need at least {MIN_DECADES}"
            )));
        }
        Ok(())
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Interpolates log(ε−1) linearly in log ζ. `zeta` must lie inside the table.
    pub(crate) fn interpolate(&self, zeta: f64) -> f64 {
        let rows = &self.rows;
        let i = rows.partition_point(|&(z, _)| z <= zeta);
        if i == 0 {
            return rows[0].1;
        }
        if i >= rows.len() {
            return rows[rows.len() - 1].1;
        }
        let (z0, e0) = rows[i - 1];
        let (z1, e1) = rows[i];
        let s = (zeta / z0).ln() / (z1 / z0).ln();
        let (x0, x1) = (e0 - 1.0, e1 - 1.0);
        if x0 > 0.0 && x1 > 0.0 {
            1.0 + (x0.ln() + s * (x1.ln() - x0.ln())).exp()
        } else {
            1.0 + x0 + s * (x1 - x0)
        }
    }

    /// Text form; values carry 17 significant digits so a reload is bit-exact.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# source: {}\n", self.provenance));
        out.push_str("# zeta_rad_per_s,eps_relative\n");
        for &(z, e) in &self.rows {
            out.push_str(&format!("{z:.16e},{e:.16e}\n"));
        }
        out
    }
}

/// Parses and validates a table from a byte stream.
pub fn load_table<R: Read>(source: R) -> Result<PermittivityTable> {
    let reader = BufReader::new(source);
    let mut rows = Vec::new();
    let mut line_numbers = Vec::new();
    let mut provenance = String::from("unspecified");
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| CasimirError::TableLine {
            line: lineno,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(src) = comment.trim().strip_prefix("source:") {
                provenance = src.trim().to_string();
            }
            continue;
        }
        let mut fields = trimmed.split(',');
        let (Some(z), Some(e), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(CasimirError::TableLine {
                line: lineno,
                message: format!("expected two comma-separated values, got {trimmed:?}"),
            });
        };
        let parse = |s: &str| {
            s.trim().parse::<f64>().map_err(|e| CasimirError::TableLine {
                line: lineno,
                message: format!("{s:?}: {e}"),
            })
        };
        rows.push((parse(z)?, parse(e)?));
        line_numbers.push(lineno);
    }
    PermittivityTable::validate(&rows, Some(&line_numbers))?;
    Ok(PermittivityTable { rows, provenance })
}
