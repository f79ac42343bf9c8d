//! Text encodings of command-line values.

use num_complex::Complex64;

/// `"re+imi;re+imi;…"`, one entry per `γ_1 … γ_{λ-1}`.
pub fn parse_gamma(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(';')
        .map(str::trim)
        .enumerate()
        .map(|(i, item)| {
            item.parse::<Complex64>()
                .map_err(|e| format!("gamma entry {} ('{item}'): {e}", i + 1))
        })
        .collect()
}

/// `"a..b"`.
pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("window '{s}' is not of the form a..b"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|e| format!("window bound '{x}': {e}"))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a >= b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok((a, b))
}
