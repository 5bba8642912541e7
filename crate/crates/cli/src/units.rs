//! Flag-value parsing (frequencies with unit suffixes, N ranges) and
//! fixed-significant-digit number formatting for CSV output.

/// Parses a frequency with an optional case-insensitive `hz`, `khz` or
/// `mhz` suffix; bare numbers are Hz.
pub fn parse_freq(s: &str) -> Result<f64, String> {
    let lower = s.trim().to_ascii_lowercase();
    let (digits, scale) = if let Some(p) = lower.strip_suffix("khz") {
        (p, 1e3)
    } else if let Some(p) = lower.strip_suffix("mhz") {
        (p, 1e6)
    } else if let Some(p) = lower.strip_suffix("hz") {
        (p, 1.0)
    } else {
        (lower.as_str(), 1.0)
    };
    let value: f64 = digits
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse '{s}' as a frequency (number with optional hz/khz/mhz suffix)"))?;
    if !value.is_finite() || value < 0.0 {
        return Err(format!("frequency must be finite and non-negative, got '{s}'"));
    }
    Ok(value * scale)
}

/// Parses an inclusive integer range written `lo..hi`.
pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range like 1..27, got '{s}'"))?;
    let lo: u32 = lo
        .trim()
        .parse()
        .map_err(|_| format!("range start '{lo}' is not a positive integer"))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .map_err(|_| format!("range end '{hi}' is not a positive integer"))?;
    if lo < 1 {
        return Err("range must start at 1 or above".into());
    }
    if lo > hi {
        return Err(format!("range {lo}..{hi} is empty"));
    }
    Ok((lo, hi))
}

/// Formats `x` with `sig` significant digits in plain decimal notation
/// (`.` separator, no grouping).
pub fn fmt_sig(x: f64, sig: i32) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (sig - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}
