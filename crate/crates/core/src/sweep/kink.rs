use serde::{Deserialize, Serialize};

use super::{Column, SweepTable};
use crate::error::{Error, Result};

/// Fewer points than this cannot separate a kink from the background.
pub const MIN_KINK_POINTS: usize = 50;
/// Cells on each side of the peak left out of the background median.
const EXCLUDE: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KinkReport {
    pub column: String,
    /// Grid point carrying the largest second difference.
    pub location: f64,
    /// Peak second difference over the median elsewhere.
    pub strength: f64,
    /// Jump of the first derivative across the cell, `|Δ²y|/h`.
    pub jump: f64,
    /// Lowest derivative that is discontinuous.
    pub order: u32,
    pub grid_spacing: f64,
}

pub fn detect_kink(table: &SweepTable, column: Column, threshold: f64) -> Result<Option<KinkReport>> {
    let y = table.numeric(column)?;
    detect_kink_in(&table.alpha, &y, threshold, column.name())
}

/// Finds the point where `|y_{i+1} - 2y_i + y_{i-1}|` exceeds `threshold`
/// times its median over the rest of the grid.
///
/// Non-finite samples (the undefined ends of derivative columns) are
/// skipped. A peak below `64 ε max|y|` is rounding noise and reports no kink.
pub fn detect_kink_in(x: &[f64], y: &[f64], threshold: f64, column: &str) -> Result<Option<KinkReport>> {
    if x.len() != y.len() {
        return Err(Error::config("column", "length differs from the grid"));
    }
    if x.len() < MIN_KINK_POINTS {
        return Err(Error::config(
            "grid.n_points",
            format!("kink detection needs at least {MIN_KINK_POINTS} points, got {}", x.len()),
        ));
    }
    if !(threshold > 0.0) {
        return Err(Error::config("threshold", format!("must be positive, got {threshold}")));
    }
    let h = (x[x.len() - 1] - x[0]) / (x.len() - 1) as f64;
    if !(h > 0.0) || x.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-6 * h) {
        return Err(Error::config("grid", "kink detection needs a uniform increasing grid"));
    }

    let d2: Vec<(usize, f64)> = (1..y.len() - 1)
        .filter(|&i| y[i - 1].is_finite() && y[i].is_finite() && y[i + 1].is_finite())
        .map(|i| (i, (y[i + 1] - 2.0 * y[i] + y[i - 1]).abs()))
        .collect();
    let Some(&(peak_i, peak)) = d2.iter().max_by(|a, b| a.1.total_cmp(&b.1)) else {
        return Ok(None);
    };
    let scale = y
        .iter()
        .filter(|v| v.is_finite())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if peak <= 64.0 * f64::EPSILON * scale {
        return Ok(None);
    }

    let mut rest: Vec<f64> = d2
        .iter()
        .filter(|(i, _)| i.abs_diff(peak_i) > EXCLUDE)
        .map(|&(_, v)| v)
        .collect();
    if rest.is_empty() {
        return Ok(None);
    }
    rest.sort_by(f64::total_cmp);
    let m = rest.len();
    let median = if m % 2 == 1 {
        rest[m / 2]
    } else {
        0.5 * (rest[m / 2 - 1] + rest[m / 2])
    };
    let strength = if median > 0.0 { peak / median } else { f64::INFINITY };
    if strength <= threshold {
        return Ok(None);
    }
    Ok(Some(KinkReport {
        column: column.to_string(),
        location: x[peak_i],
        strength,
        jump: peak / h,
        order: 1,
        grid_spacing: h,
    }))
}
