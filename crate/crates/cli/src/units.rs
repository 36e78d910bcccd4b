//! Quantities with unit suffixes. A bare number is taken in the SI unit.

use casimir_core::constants::ev_to_rad_per_s;

use crate::error::{CliError, CliResult};

fn split_number(text: &str) -> CliResult<(f64, &str)> {
    let text = text.trim();
    let end = text
        .char_indices()
        .find(|&(i, ch)| {
            !(ch.is_ascii_digit()
                || ch == '.'
                || ch == '+'
                || ch == '-'
                || ((ch == 'e' || ch == 'E') && is_exponent(text, i)))
        })
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    let (num, unit) = text.split_at(end);
    let value: f64 = num
        .parse()
        .map_err(|_| CliError::usage(format!("cannot parse a number from '{text}'")))?;
    if !value.is_finite() {
        return Err(CliError::usage(format!("'{text}' is not finite")));
    }
    Ok((value, unit.trim()))
}

// An 'e' belongs to the number only when followed by a digit or sign, so
// "9.03eV" splits as 9.03 + "eV" while "1e-6m" keeps its exponent.
fn is_exponent(text: &str, i: usize) -> bool {
    let rest = &text.as_bytes()[i + 1..];
    match rest.first() {
        Some(b'0'..=b'9') => true,
        Some(b'+') | Some(b'-') => matches!(rest.get(1), Some(b'0'..=b'9')),
        _ => false,
    }
}

/// Length in metres: `m`, `mm`, `um`/`µm`, `nm`.
///
/// Dividing by an exact power of ten keeps the result correctly rounded, so
/// "1um", "1000nm" and "1e-6m" give the same f64.
pub fn parse_length(text: &str) -> CliResult<f64> {
    let (v, unit) = split_number(text)?;
    let per_metre = match unit {
        "" | "m" => 1.0,
        "mm" => 1e3,
        "um" | "µm" | "μm" => 1e6,
        "nm" => 1e9,
        other => return Err(CliError::usage(format!("unknown length unit '{other}' in '{text}'"))),
    };
    Ok(v / per_metre)
}

/// Temperature in kelvin: `K` or bare.
pub fn parse_temperature(text: &str) -> CliResult<f64> {
    let (v, unit) = split_number(text)?;
    match unit {
        "" | "K" => Ok(v),
        other => Err(CliError::usage(format!("unknown temperature unit '{other}' in '{text}'"))),
    }
}

/// Angular frequency in rad/s: `eV`, `rad/s` or bare.
pub fn parse_frequency(text: &str) -> CliResult<f64> {
    let (v, unit) = split_number(text)?;
    match unit {
        "" | "rad/s" => Ok(v),
        "eV" => Ok(ev_to_rad_per_s(v)),
        "meV" => Ok(ev_to_rad_per_s(v * 1e-3)),
        other => Err(CliError::usage(format!("unknown frequency unit '{other}' in '{text}'"))),
    }
}

/// Inverse length in 1/m: `1/m`, `1/um`, `1/nm` or bare.
pub fn parse_wavenumber(text: &str) -> CliResult<f64> {
    let (v, unit) = split_number(text)?;
    let scale = match unit {
        "" | "1/m" => 1.0,
        "1/um" | "1/µm" => 1e6,
        "1/nm" => 1e9,
        other => return Err(CliError::usage(format!("unknown wavenumber unit '{other}' in '{text}'"))),
    };
    Ok(v * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_agree_across_units() {
        let a = parse_length("1um").unwrap();
        assert_eq!(a, parse_length("1000nm").unwrap());
        assert_eq!(a, parse_length("1e-6m").unwrap());
        assert_eq!(a, parse_length("1µm").unwrap());
        assert_eq!(parse_length("2.5e-6").unwrap(), 2.5e-6);
    }

    #[test]
    fn electron_volts_convert() {
        let w = parse_frequency("9.03eV").unwrap();
        assert!((w / 1.371_898e16 - 1.0).abs() < 1e-6);
        assert_eq!(parse_frequency("1.5e14rad/s").unwrap(), 1.5e14);
        assert_eq!(parse_frequency("34.5meV").unwrap(), parse_frequency("0.0345eV").unwrap());
    }

    #[test]
    fn temperatures() {
        assert_eq!(parse_temperature("300K").unwrap(), 300.0);
        assert_eq!(parse_temperature("0").unwrap(), 0.0);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_length("1furlong").is_err());
        assert!(parse_length("um").is_err());
        assert!(parse_temperature("300C").is_err());
        assert!(parse_frequency("9.03eVx").is_err());
    }
}
