//! `# key=value` run headers. Every output starts with the resolved
//! configuration so a file documents, and can regenerate, itself.

use std::fmt::Write as _;

use casimir_core::constants::{CONSTANTS_VERSION, C, E_CHARGE, HBAR, K_B};
use casimir_core::QuadratureSettings;

pub const TOOL: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Key used for the recorded command line, one argument per line.
pub const ARG_KEY: &str = "arg";
pub const TIMESTAMP_KEY: &str = "timestamp";

#[derive(Debug, Clone, Default)]
pub struct RunManifest {
    entries: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(command: &str, args: &[String]) -> Self {
        let mut m = RunManifest::default();
        m.push("tool", TOOL);
        m.push("command", command);
        for a in args {
            m.push(ARG_KEY, a);
        }
        m
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string().replace(['\n', '\r'], " ");
        self.entries.push((key.to_owned(), value));
    }

    pub fn push_f64(&mut self, key: &str, value: f64) {
        self.push(key, fmt_f64(value));
    }

    pub fn push_settings(&mut self, s: &QuadratureSettings) {
        self.push_f64("rel_tol", s.rel_tol);
        self.push_f64("abs_floor", s.abs_floor);
        self.push("max_subdivisions", s.max_subdivisions);
        self.push_f64("y_max", s.y_max);
        self.push("matsubara_m_max", s.matsubara_m_max);
    }

    pub fn push_constants(&mut self) {
        self.push("constants", CONSTANTS_VERSION);
        self.push_f64("hbar_Js", HBAR);
        self.push_f64("c_m_per_s", C);
        self.push_f64("k_B_J_per_K", K_B);
        self.push_f64("e_C", E_CHARGE);
    }

    pub fn render(&self, timestamp: Option<&str>) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "# {k}={v}");
        }
        if let Some(ts) = timestamp {
            let _ = writeln!(out, "# {TIMESTAMP_KEY}={ts}");
        }
        out
    }
}

/// Command-line arguments recorded in an output header, in order.
pub fn recorded_args(text: &str) -> Vec<String> {
    let prefix = format!("# {ARG_KEY}=");
    text.lines()
        .take_while(|l| l.starts_with('#'))
        .filter_map(|l| l.strip_prefix(&prefix))
        .map(str::to_owned)
        .collect()
}

/// Nine significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.8e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_round_trips_arguments() {
        let args: Vec<String> = ["pressure", "--model", "table:a b.csv,drude-tail:1eV,1meV"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut m = RunManifest::new("pressure", &args);
        m.push_f64("a_m", 1e-6);
        let text = m.render(None) + "a_m\n1\n# arg=not-header\n";
        assert_eq!(recorded_args(&text), args);
        assert!(text.contains("# a_m=1.00000000e-6\n"));
        assert!(!text.contains(TIMESTAMP_KEY));
        assert!(m.render(Some("t")).ends_with("# timestamp=t\n"));
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_f64(-1.300_229_5e-3), "-1.30022950e-3");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }
}
