//! Two-column series CSV: header `x,y`, one record per line, x strictly
//! increasing. Values are written with the shortest decimal representation
//! that round-trips, so emit-then-load is value-identical and output is
//! locale-independent by construction.

use std::path::Path;

use crate::fail::Failure;

pub fn load_series(path: &Path) -> Result<Vec<(f64, f64)>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_series(&text)
}

pub fn parse_series(text: &str) -> Result<Vec<(f64, f64)>, Failure> {
    let mut rows: Vec<(f64, f64)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let row = idx + 1;
        if row == 1 {
            if line.trim() != "x,y" {
                return Err(Failure::Usage(format!(
                    "row 1: expected header 'x,y', found '{line}'"
                )));
            }
            continue;
        }
        let (raw_x, raw_y) = line.split_once(',').ok_or_else(|| {
            Failure::Usage(format!("row {row}: expected 'x,y' record, found '{line}'"))
        })?;
        let x: f64 = raw_x.trim().parse().map_err(|_| {
            Failure::Usage(format!("row {row}: cannot parse x value '{raw_x}'"))
        })?;
        let y: f64 = raw_y.trim().parse().map_err(|_| {
            Failure::Usage(format!("row {row}: cannot parse y value '{raw_y}'"))
        })?;
        if !x.is_finite() || !y.is_finite() {
            return Err(Failure::Usage(format!("row {row}: values must be finite")));
        }
        if let Some(&(prev_x, _)) = rows.last() {
            if x <= prev_x {
                return Err(Failure::Usage(format!(
                    "row {row}: x must be strictly increasing ({x} after {prev_x})"
                )));
            }
        }
        rows.push((x, y));
    }
    Ok(rows)
}

/// Inverse of [`parse_series`]; the round-trip is value-identical because
/// rows render through `f64`'s shortest-round-trip formatting.
#[cfg(test)]
pub fn render_series(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("x,y\n");
    for &(x, y) in rows {
        out.push_str(&format!("{x},{y}\n"));
    }
    out
}
