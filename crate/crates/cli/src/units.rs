//! Numbers with optional unit suffixes: `4fs`, `2.8e5 m`, `200keV`.

use vacuum_leap::model::SI;

/// (suffix, multiplier to SI) pairs; longer suffixes first so `keV` wins over `eV`.
type UnitTable = &'static [(&'static str, f64)];

const ENERGY_EV: UnitTable = &[("keV", 1e3), ("MeV", 1e6), ("GeV", 1e9), ("eV", 1.0)];
const LENGTH: UnitTable = &[("km", 1e3), ("m", 1.0)];
const TIME: UnitTable = &[("fs", 1e-15), ("as", 1e-18), ("s", 1.0)];

fn split_number(text: &str, units: UnitTable, kind: &str) -> Result<(f64, f64), String> {
    let text = text.trim();
    let (number, scale) = units
        .iter()
        .find_map(|(suffix, scale)| text.strip_suffix(suffix).map(|n| (n.trim_end(), *scale)))
        .unwrap_or((text, 1.0));
    let value: f64 = number.parse().map_err(|_| format!("invalid {kind} `{text}`"))?;
    if !value.is_finite() {
        return Err(format!("invalid {kind} `{text}`"));
    }
    Ok((value, scale))
}

/// Energy in joules. Accepts eV, keV, MeV, GeV and J; a bare number is GeV.
pub fn parse_energy(text: &str) -> Result<f64, String> {
    let trimmed = text.trim();
    if let Some(joules) = trimmed.strip_suffix('J') {
        return split_number(joules, &[], "energy").map(|(v, _)| v);
    }
    let has_suffix = ENERGY_EV.iter().any(|(s, _)| trimmed.ends_with(s));
    let (value, scale) = split_number(trimmed, ENERGY_EV, "energy")?;
    let ev = if has_suffix { value * scale } else { value * 1e9 };
    Ok(ev * SI.e)
}

/// Energy in GeV, same syntax as [`parse_energy`].
pub fn parse_energy_gev(text: &str) -> Result<f64, String> {
    parse_energy(text).map(|j| SI.to_gev(j))
}

/// Length in metres. Accepts m and km; a bare number is metres.
pub fn parse_length(text: &str) -> Result<f64, String> {
    split_number(text, LENGTH, "length").map(|(v, s)| v * s)
}

/// Time in seconds. Accepts s, fs and as; a bare number is seconds.
pub fn parse_time(text: &str) -> Result<f64, String> {
    split_number(text, TIME, "time").map(|(v, s)| v * s)
}
