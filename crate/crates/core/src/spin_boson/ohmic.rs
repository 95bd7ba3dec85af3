//! Ohmic ground-state energy, piecewise in `α`.
//!
//! For `α < 1` the first and third branches are one expression,
//! `E = C/(1-2α) [Δ₀ r^{α/(1-α)} - Δ₀ r]`, `r = Δ₀/Λ₀`. Writing
//! `y = (p-1) ln r` with `p = α/(1-α)` gives the pole-free form
//! `E = C Δ₀ r L φ(y)/(1-α)` with `L = ln(1/r)` and `φ(y) = (e^y-1)/y`,
//! which is used on both sides of `α = ½`.

use super::SpinBosonPoint;
use crate::error::{Error, Result};
use crate::numerics::expm1_ratio;

/// `|α - ½|` below which the `α = ½` branch is used verbatim.
pub const MIDDLE_BRANCH_WINDOW: f64 = 1e-9;

fn check(point: &SpinBosonPoint) -> Result<()> {
    if !point.bath.is_ohmic() {
        return Err(Error::WrongModel("an Ohmic bath (s = 1)"));
    }
    Ok(())
}

pub fn ohmic_ground_energy(point: &SpinBosonPoint) -> Result<f64> {
    check(point)?;
    let (c, d0, alpha) = (point.scaling_constant, point.delta0, point.alpha());
    let r = point.ratio();
    let l = -r.ln();
    if alpha >= 1.0 {
        return Ok(c * d0 * r);
    }
    if (alpha - 0.5).abs() < MIDDLE_BRANCH_WINDOW {
        return Ok(2.0 * c * d0 * r * l);
    }
    let p = alpha / (1.0 - alpha);
    let y = -(p - 1.0) * l;
    Ok(c * d0 * r * l * expm1_ratio(y) / (1.0 - alpha))
}

/// `∂E/∂Δ₀` at fixed `Λ₀`.
pub fn ohmic_ground_energy_derivative(point: &SpinBosonPoint) -> Result<f64> {
    check(point)?;
    let (c, alpha) = (point.scaling_constant, point.alpha());
    let r = point.ratio();
    let l = -r.ln();
    if alpha >= 1.0 {
        return Ok(2.0 * c * r);
    }
    if (alpha - 0.5).abs() < MIDDLE_BRANCH_WINDOW {
        return Ok(2.0 * c * r * (2.0 * l - 1.0));
    }
    let p = alpha / (1.0 - alpha);
    let y = -(p - 1.0) * l;
    Ok(c * r * (l * expm1_ratio(y) / (1.0 - alpha) - 1.0) / (1.0 - alpha))
}
