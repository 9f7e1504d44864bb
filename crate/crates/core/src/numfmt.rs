//! Locale-independent significant-figure formatting.

/// Formats `value` with `sig` significant figures in positional notation,
/// keeping trailing zeros (`0.0250`, `3.30`). Values with more integer
/// digits than `sig` are rounded to an integer.
pub fn format_sig(value: f64, sig: usize) -> String {
    assert!(sig > 0, "at least one significant figure");
    if !value.is_finite() {
        return value.to_string();
    }
    if value == 0.0 {
        return format!("{:.*}", sig - 1, 0.0);
    }
    let magnitude = value.abs().log10().floor() as i64;
    let decimals = |mag: i64| (sig as i64 - 1 - mag).max(0) as usize;
    let text = format!("{:.*}", decimals(magnitude), value);
    // Rounding may carry into the next decade (9.996 -> 10.00).
    let rounded: f64 = text.parse().unwrap_or(value);
    if rounded.abs() >= 10f64.powi(magnitude as i32 + 1) {
        format!("{:.*}", decimals(magnitude + 1), value)
    } else {
        text
    }
}

/// Like [`format_sig`] but drops trailing fractional zeros (`1.00` -> `1`).
pub fn format_sig_trimmed(value: f64, sig: usize) -> String {
    let text = format_sig(value, sig);
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        text
    }
}
