//! Self-consistent renormalised tunneling and the `max(Δ_ren, Δ₀²/Λ₀)` rule.

use serde::{Deserialize, Serialize};

use super::SpinBosonPoint;
use crate::error::{Error, Result};
use crate::numerics::bisect;

/// Solutions below `DELTA_REN_FLOOR · Λ₀` are reported as no solution.
pub const DELTA_REN_FLOOR: f64 = 1e-15;
const DAMPING: f64 = 0.5;
const MAX_ITER: usize = 10_000;
/// Step of the downward bracket scan in `ln Δ`.
const SCAN_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DeltaRen {
    Solved(f64),
    NoSolution,
}

impl DeltaRen {
    pub fn value(self) -> Option<f64> {
        match self {
            DeltaRen::Solved(v) => Some(v),
            DeltaRen::NoSolution => None,
        }
    }
}

/// Largest root of `Δ = Δ₀ exp(-½∫_Δ^{Λ₀} J/ω²)` in `(10⁻¹⁵Λ₀, Δ₀]`.
///
/// Works in `x = ln Δ`, where `h(x) = x - ln Δ₀ + exponent(eˣ)` is positive
/// at `x = ln Δ₀`. A downward scan finds the first sign change; the root is
/// then taken by damped fixed-point iteration from the top of that bracket,
/// with bisection when the iteration stalls or leaves the bracket. For
/// `s < 1` the map is not contractive everywhere and `h` can have two roots,
/// so the scan is what selects the physical (largest) one.
pub fn delta_ren(point: &SpinBosonPoint) -> Result<DeltaRen> {
    let bath = &point.bath;
    let ln_d0 = point.delta0.ln();
    if bath.alpha == 0.0 {
        return Ok(DeltaRen::Solved(point.delta0));
    }
    let h = |x: f64| x - ln_d0 + bath.exponent_unchecked(x.exp());
    let floor = (DELTA_REN_FLOOR * bath.cutoff).ln();

    let mut hi = ln_d0;
    let mut lo = None;
    while hi > floor {
        let next = (hi - SCAN_STEP).max(floor);
        if h(next) <= 0.0 {
            lo = Some(next);
            break;
        }
        hi = next;
    }
    let Some(lo) = lo else {
        return Ok(DeltaRen::NoSolution);
    };

    let mut x = hi;
    for _ in 0..MAX_ITER {
        let target = ln_d0 - bath.exponent_unchecked(x.exp());
        let next = (1.0 - DAMPING) * x + DAMPING * target;
        if !(lo..=hi).contains(&next) {
            break;
        }
        if (next - x).abs() <= 1e-15 * x.abs().max(1.0) {
            return Ok(DeltaRen::Solved(next.exp()));
        }
        x = next;
    }
    let root = bisect(h, lo, hi, 1e-15 * lo.abs().max(1.0))?;
    if !root.is_finite() {
        return Err(Error::Numerical(format!(
            "delta_ren bracket [{lo}, {hi}] produced {root}"
        )));
    }
    Ok(DeltaRen::Solved(root.exp()))
}

/// `dΔ_ren/dΔ₀` by implicit differentiation:
/// `(Δ_ren/Δ₀) / (1 - α (Δ_ren/Λ₀)^{s-1})`.
pub fn delta_ren_derivative(point: &SpinBosonPoint, delta_ren: f64) -> f64 {
    delta_ren / point.delta0 / (1.0 - point.bath.log_slope(delta_ren))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaxRuleBranch {
    Renormalized,
    Perturbative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxRule {
    pub free_energy: f64,
    /// `∂F/∂Δ₀` of the active branch.
    pub derivative: f64,
    pub branch: MaxRuleBranch,
    pub delta_ren: DeltaRen,
}

/// `F ≃ max(Δ_ren, Δ₀²/Λ₀)`; a missing `Δ_ren` selects the second branch.
pub fn max_rule(point: &SpinBosonPoint) -> Result<MaxRule> {
    let dr = delta_ren(point)?;
    let pert = point.delta0 * point.ratio();
    Ok(match dr {
        DeltaRen::Solved(v) if v >= pert => MaxRule {
            free_energy: v,
            derivative: delta_ren_derivative(point, v),
            branch: MaxRuleBranch::Renormalized,
            delta_ren: dr,
        },
        _ => MaxRule {
            free_energy: pert,
            derivative: 2.0 * point.ratio(),
            branch: MaxRuleBranch::Perturbative,
            delta_ren: dr,
        },
    })
}

/// Coupling at which the two branches of the max rule cross, with every
/// other parameter of `point` held fixed.
pub fn max_rule_crossover(point: &SpinBosonPoint) -> Result<f64> {
    let pert = (point.delta0 * point.ratio()).ln();
    let gap = |alpha: f64| -> f64 {
        match point.with_alpha(alpha).and_then(|p| delta_ren(&p)) {
            Ok(DeltaRen::Solved(v)) => v.ln() - pert,
            _ => -1e300,
        }
    };
    let mut hi = 1.0;
    while gap(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::Numerical("max-rule crossover not bracketed".into()));
        }
    }
    bisect(gap, 0.0, hi, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(s: f64, alpha: f64, ratio: f64) -> Option<f64> {
        delta_ren(&SpinBosonPoint::scaled(s, alpha, ratio).unwrap())
            .unwrap()
            .value()
    }

    #[test]
    fn ohmic_power_law() {
        for i in 1..=9 {
            let alpha = i as f64 / 10.0;
            let r: f64 = if alpha > 0.85 { 0.1 } else { 0.01 };
            let exact = r * r.powf(alpha / (1.0 - alpha));
            let v = solve(1.0, alpha, r).unwrap();
            assert!(((v - exact) / exact).abs() < 1e-10, "alpha={alpha}: {v} vs {exact}");
        }
        let v = solve(1.0, 0.5, 0.01).unwrap();
        assert!((v - 1e-4).abs() < 1e-14);
    }

    #[test]
    fn ohmic_localized_has_no_solution() {
        assert_eq!(solve(1.0, 1.0, 0.01), None);
        assert_eq!(solve(1.0, 1.5, 0.01), None);
    }

    #[test]
    fn free_spin() {
        assert_eq!(solve(0.5, 0.0, 0.3), Some(0.3));
    }

    #[test]
    fn super_ohmic_example() {
        // lower-limit correction is O(Δ_ren/Λ₀): 1.5e-3 relative at these values
        let v = solve(2.0, 3.0, 0.01).unwrap();
        let approx = 0.01 * (-3.0f64).exp();
        let rel = (v - approx) / approx;
        assert!((rel - 1.4969672779857e-3).abs() < 1e-12, "rel = {rel}");
    }

    #[test]
    fn sub_ohmic_deep_scaling_has_no_solution() {
        assert_eq!(solve(0.5, 0.5, 1e-6), None);
    }

    #[test]
    fn sub_ohmic_picks_largest_root() {
        let p = SpinBosonPoint::scaled(0.5, 0.05, 0.8).unwrap();
        let v = delta_ren(&p).unwrap().value().unwrap();
        let h = |x: f64| x - p.delta0.ln() + p.bath.exponent_unchecked(x.exp());
        assert!(h(v.ln()).abs() < 1e-12);
        // nothing between the root and Δ₀
        for i in 1..100 {
            let x = v.ln() + (p.delta0.ln() - v.ln()) * i as f64 / 100.0;
            assert!(h(x) > 0.0);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &(s, alpha, r) in &[(1.0, 0.3, 0.01), (2.0, 1.0, 1e-3), (0.5, 0.02, 0.5)] {
            let p = SpinBosonPoint::scaled(s, alpha, r).unwrap();
            let v = delta_ren(&p).unwrap().value().unwrap();
            let analytic = delta_ren_derivative(&p, v);
            let numeric = crate::numerics::derivative(
                |d| delta_ren(&p.with_delta0(d).unwrap()).unwrap().value().unwrap(),
                r,
                1e-4,
            );
            assert!(((analytic - numeric) / analytic).abs() < 1e-6, "s={s}");
        }
    }

    #[test]
    fn crossover_locations() {
        let p = SpinBosonPoint::scaled(1.0, 0.0, 0.01).unwrap();
        assert!((max_rule_crossover(&p).unwrap() - 0.5).abs() < 1e-9);
        // super-Ohmic: close to (s-1) ln(Λ₀/Δ₀), shifted by the lower-limit term
        let p = SpinBosonPoint::scaled(2.0, 0.0, 1e-3).unwrap();
        let a = max_rule_crossover(&p).unwrap();
        assert!((a - 1e3f64.ln()).abs() < 0.01 * a);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn monotone_in_alpha(s in 0.3f64..3.0, a1 in 0.0f64..2.0, a2 in 0.0f64..2.0, lr in 0.2f64..4.0) {
                let r = 10f64.powf(-lr);
                let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
                if let (Some(x), Some(y)) = (solve(s, lo, r), solve(s, hi, r)) {
                    prop_assert!(y <= x * (1.0 + 1e-12));
                }
            }
        }
    }
}
