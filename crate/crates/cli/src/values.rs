//! Parameter literals and flat `key = value` files.

use crate::CliError;
use ramlip_core::ComplexValue;
use std::f64::consts::PI;
use std::path::Path;

/// A real literal: decimal, or `[coef]pi`, `[coef]pi2` (π²), e.g. `pi`, `2pi`, `4pi2`, `0.5pi`.
fn parse_real(tok: &str) -> Option<f64> {
    let tok = tok.trim();
    if tok.is_empty() {
        return None;
    }
    let (sign, body) = match tok.as_bytes()[0] {
        b'-' => (-1.0, &tok[1..]),
        b'+' => (1.0, &tok[1..]),
        _ => (1.0, tok),
    };
    let (coef, unit) = if let Some(c) = body.strip_suffix("pi2") {
        (c, PI * PI)
    } else if let Some(c) = body.strip_suffix("pi") {
        (c, PI)
    } else {
        (body, 1.0)
    };
    let coef = match coef.trim_end_matches('*') {
        "" if unit != 1.0 => 1.0,
        c => c.parse::<f64>().ok()?,
    };
    Some(sign * coef * unit)
}

/// A complex literal: `re`, `im i`, or `re±im i`; each part accepts the real forms.
pub fn parse_value(tok: &str) -> Result<ComplexValue, CliError> {
    let t: String = tok.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Usage(format!("cannot parse value '{tok}' (examples: 0.5, 2pi, 4pi2, 1+0.5i, -i)"));
    if let Some(im) = t.strip_suffix('i').filter(|s| !s.ends_with('p')) {
        // split at the last sign that is not leading and not an exponent sign
        let bytes = im.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (parse_real(&im[..k]).ok_or_else(bad)?, &im[k..]),
            None => (0.0, im),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => parse_real(s).ok_or_else(bad)?,
        };
        return Ok(ComplexValue::new(re, im));
    }
    parse_real(&t).map(|re| ComplexValue::new(re, 0.0)).ok_or_else(bad)
}

/// Comma-separated list of values; empty lists are rejected.
pub fn parse_list(s: &str) -> Result<Vec<ComplexValue>, CliError> {
    let vals = s.split(',').filter(|t| !t.trim().is_empty()).map(parse_value).collect::<Result<Vec<_>, _>>()?;
    if vals.is_empty() {
        return Err(CliError::Usage(format!("empty value list '{s}'")));
    }
    Ok(vals)
}

/// `key = value` lines; `#` starts a comment. Later keys override earlier ones.
pub fn read_flat_file(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key = value", path.display(), i + 1)))?;
        let k = k.trim().trim_start_matches("--").replace('-', "_");
        out.retain(|(key, _)| *key != k);
        out.push((k, v.trim().to_string()));
    }
    Ok(out)
}
