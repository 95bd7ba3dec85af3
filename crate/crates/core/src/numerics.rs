//! Small numerical kernels shared by the models: adaptive quadrature,
//! Richardson-extrapolated derivatives, bracketed root finding.

use crate::error::{Error, Result};

/// Panels deeper than this are not split further.
const MAX_PANEL_DEPTH: u32 = 40;
/// Initial number of equal panels before adaptive refinement.
const INITIAL_PANELS: usize = 8;

/// Integrate `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// Each panel is handled by a double-exponential rule; panels whose error
/// estimate exceeds their share of the budget are bisected.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Numerical(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let width = (b - a) / INITIAL_PANELS as f64;
    let edges: Vec<f64> = (0..=INITIAL_PANELS)
        .map(|i| if i == INITIAL_PANELS { b } else { a + width * i as f64 })
        .collect();

    // coarse pass fixes the absolute error budget
    let coarse: f64 = edges
        .windows(2)
        .map(|w| quadrature::double_exponential::integrate(&f, w[0], w[1], 1e-6).integral)
        .sum();
    let budget = rel_tol * coarse.abs().max(f64::MIN_POSITIVE);

    let mut total = 0.0;
    for w in edges.windows(2) {
        total += panel(&f, w[0], w[1], budget / INITIAL_PANELS as f64, 0)?;
    }
    Ok(total)
}

fn panel<F>(f: &F, a: f64, b: f64, abs_tol: f64, depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let out = quadrature::double_exponential::integrate(f, a, b, abs_tol);
    if out.error_estimate <= abs_tol {
        return Ok(out.integral);
    }
    if depth >= MAX_PANEL_DEPTH {
        return Err(Error::Numerical(format!(
            "quadrature did not converge on [{a:e}, {b:e}]: error estimate {:e} > {abs_tol:e}",
            out.error_estimate
        )));
    }
    let mid = 0.5 * (a + b);
    Ok(panel(f, a, mid, 0.5 * abs_tol, depth + 1)? + panel(f, mid, b, 0.5 * abs_tol, depth + 1)?)
}

/// Central difference with step `rel_step * |x|`, Richardson-extrapolated once.
pub fn derivative<F>(f: F, x: f64, rel_step: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let h = rel_step * x.abs().max(1e-8);
    let central = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let coarse = central(h);
    let fine = central(0.5 * h);
    (4.0 * fine - coarse) / 3.0
}

/// Bisection on a sign-changing bracket. Returns the midpoint of the final
/// bracket once it is narrower than `x_tol`.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, x_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Numerical(format!(
            "bisection bracket [{lo}, {hi}] has no sign change"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= x_tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(e^y - 1) / y`, equal to 1 at `y = 0`.
pub fn expm1_ratio(y: f64) -> f64 {
    if y.abs() < 1e-8 {
        1.0 + 0.5 * y
    } else {
        y.exp_m1() / y
    }
}

/// `x ln x`, continued to 0 at `x = 0`.
pub fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}
