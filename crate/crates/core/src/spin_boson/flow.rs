//! Free energy from the cutoff flow `∂F/∂Λ = (Δ(Λ)/Λ)²`.

use super::{delta_ren, SpinBosonPoint};
use crate::error::{Error, Result};
use crate::numerics::integrate;

pub const FLOW_REL_TOL: f64 = 1e-8;
/// With no lower scale the integral starts this many e-folds below `Λ₀`.
const LOG_SPAN_WITHOUT_SCALE: f64 = 700.0;

/// `F = ∫_{max(T, Δ_ren)}^{Λ₀} (Δ(Λ)/Λ)² dΛ`, with `Δ(Λ) = Δ₀ e^{-exponent(Λ)}`.
///
/// Integrated in `u = ln Λ`. When neither `T` nor `Δ_ren` provides a lower
/// scale the integral runs to `Λ₀ e^{-700}`.
pub fn flow_free_energy(point: &SpinBosonPoint) -> Result<f64> {
    let bath = &point.bath;
    let dr = delta_ren(point)?.value().unwrap_or(0.0);
    let lower = point.temperature.max(dr);
    if lower >= bath.cutoff {
        return Ok(0.0);
    }
    let u_hi = bath.cutoff.ln();
    let u_lo = if lower > 0.0 {
        lower.ln()
    } else {
        u_hi - LOG_SPAN_WITHOUT_SCALE
    };
    let ln_d0 = point.delta0.ln();
    integrate(
        |u: f64| (2.0 * (ln_d0 - bath.exponent_unchecked(u.exp())) - u).exp(),
        u_lo,
        u_hi,
        FLOW_REL_TOL,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeTlsSigmaX {
    /// Flow estimate `min(Δ₀/T, 1)`.
    pub scaling: f64,
    pub exact: f64,
}

/// Free two-level system at temperature `T`: scaling estimate against
/// `tanh(Δ₀/T)`.
pub fn free_tls_sigma_x(delta0: f64, temperature: f64) -> Result<FreeTlsSigmaX> {
    if !(temperature > 0.0) {
        return Err(Error::domain("temperature", temperature, "must be positive"));
    }
    if !(delta0 > 0.0) {
        return Err(Error::domain("delta0", delta0, "must be positive"));
    }
    let x = delta0 / temperature;
    Ok(FreeTlsSigmaX {
        scaling: x.min(1.0),
        exact: x.tanh(),
    })
}
