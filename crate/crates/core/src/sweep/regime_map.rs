use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::RegimeMapConfig;
use crate::bath::BathSpec;
use crate::error::Result;
use crate::spin_boson::{subohmic_regime_with, SpinBosonPoint, SubOhmicRegime};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeCell {
    pub ratio: f64,
    pub alpha: f64,
    pub regime: SubOhmicRegime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeMap {
    pub config: RegimeMapConfig,
    /// Ratio-major order.
    pub cells: Vec<RegimeCell>,
    /// The line `α = s Δ₀/Λ₀` at each ratio.
    pub line: Vec<(f64, f64)>,
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Classifies every `(Δ₀/Λ₀, α)` cell with `Λ₀ = 1`.
pub fn regime_map(cfg: &RegimeMapConfig) -> Result<RegimeMap> {
    cfg.validate()?;
    let ratios = logspace(cfg.ratio_min, cfg.ratio_max, cfg.ratio_points);
    let alphas = linspace(cfg.alpha_min, cfg.alpha_max, cfg.alpha_points);
    let pairs: Vec<(f64, f64)> = ratios
        .iter()
        .flat_map(|&r| alphas.iter().map(move |&a| (r, a)))
        .collect();
    let cells: Vec<Result<RegimeCell>> = pairs
        .par_iter()
        .map(|&(ratio, alpha)| {
            let p = SpinBosonPoint::ground(ratio, BathSpec::new(cfg.s, alpha, 1.0)?)?;
            Ok(RegimeCell {
                ratio,
                alpha,
                regime: subohmic_regime_with(&p, cfg.scaling_ratio)?,
            })
        })
        .collect();
    Ok(RegimeMap {
        config: cfg.clone(),
        cells: cells.into_iter().collect::<Result<_>>()?,
        line: ratios.iter().map(|&r| (r, cfg.s * r)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::Format;

    #[test]
    fn scaling_limit_splits_on_line() {
        let cfg = RegimeMapConfig {
            s: 0.5,
            ratio_min: 1e-4,
            ratio_max: 0.5,
            ratio_points: 8,
            alpha_min: 0.0,
            alpha_max: 0.5,
            alpha_points: 11,
            scaling_ratio: 0.1,
            format: Format::Csv,
        };
        let map = regime_map(&cfg).unwrap();
        assert_eq!(map.cells.len(), 88);
        // the coherent corner only opens outside the scaling limit
        for c in map.cells.iter().filter(|c| c.ratio < cfg.scaling_ratio) {
            if c.alpha > cfg.s * c.ratio {
                assert_eq!(c.regime, SubOhmicRegime::Localized, "{c:?}");
            } else {
                assert!(c.regime.is_delocalized());
            }
        }
        let top: Vec<_> = map.cells.iter().filter(|c| c.ratio == map.line.last().unwrap().0).collect();
        assert_eq!(top.len(), 11);
        let coherent = top.iter().filter(|c| c.regime == SubOhmicRegime::DelocalizedCoherent).count();
        assert!(2 * coherent > top.len(), "{coherent} of {}", top.len());
        assert!(map.cells.iter().filter(|c| c.alpha == 0.0).all(|c| c.regime.is_delocalized()));
    }
}
