//! Flag value parsers.

use std::f64::consts::PI;

/// Parses a real number, also accepting multiples of π written as `pi`,
/// `2pi`, `-pi/2`, `0.5pi` or `3*pi/4`.
pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().map_err(|e| format!("invalid number {s:?}: {e}"));
    };
    let coeff = t[..pos].trim_end_matches('*').trim();
    let coeff = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|e| format!("invalid coefficient in {s:?}: {e}"))?,
    };
    let rest = t[pos + 2..].trim();
    let denom = if rest.is_empty() {
        1.0
    } else if let Some(d) = rest.strip_prefix('/') {
        d.trim().parse::<f64>().map_err(|e| format!("invalid denominator in {s:?}: {e}"))?
    } else {
        return Err(format!("unexpected trailing text in {s:?}"));
    };
    Ok(coeff * PI / denom)
}
