use serde::{Deserialize, Serialize};

use super::{delta_ren, SpinBosonPoint};
use crate::error::{Error, Result};

/// `Δ₀/Λ₀` below which a point counts as being in the scaling limit.
pub const SCALING_LIMIT_RATIO: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubOhmicRegime {
    DelocalizedCoherent,
    DelocalizedIncoherent,
    Localized,
}

impl SubOhmicRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            SubOhmicRegime::DelocalizedCoherent => "delocalized-coherent",
            SubOhmicRegime::DelocalizedIncoherent => "delocalized-incoherent",
            SubOhmicRegime::Localized => "localized",
        }
    }

    pub fn is_delocalized(self) -> bool {
        self != SubOhmicRegime::Localized
    }
}

impl std::fmt::Display for SubOhmicRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn subohmic_regime(point: &SpinBosonPoint) -> Result<SubOhmicRegime> {
    subohmic_regime_with(point, SCALING_LIMIT_RATIO)
}

/// Classification of a sub-Ohmic point.
///
/// Outside the scaling limit (`Δ₀/Λ₀ ≥ scaling_ratio`) a solvable `Δ_ren`
/// that dominates `Δ₀²/Λ₀` marks the coherent corner. Everywhere else the
/// line `α = sΔ₀/Λ₀` separates the incoherent delocalised phase from the
/// localised one.
pub fn subohmic_regime_with(point: &SpinBosonPoint, scaling_ratio: f64) -> Result<SubOhmicRegime> {
    let s = point.bath.s;
    if !(s < 1.0) {
        return Err(Error::WrongModel("a sub-Ohmic bath (s < 1)"));
    }
    let r = point.ratio();
    if r >= scaling_ratio {
        if let Some(dr) = delta_ren(point)?.value() {
            if dr >= point.delta0 * r {
                return Ok(SubOhmicRegime::DelocalizedCoherent);
            }
        }
    }
    Ok(if point.alpha() < s * r {
        SubOhmicRegime::DelocalizedIncoherent
    } else {
        SubOhmicRegime::Localized
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(s: f64, ratio: f64, alpha: f64) -> SubOhmicRegime {
        subohmic_regime(&SpinBosonPoint::scaled(s, alpha, ratio).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(classify(0.5, 0.8, 0.05), SubOhmicRegime::DelocalizedCoherent);
        assert_eq!(classify(0.5, 1e-3, 1e-4), SubOhmicRegime::DelocalizedIncoherent);
        assert_eq!(classify(0.5, 1e-3, 0.1), SubOhmicRegime::Localized);
    }

    #[test]
    fn zero_coupling_is_delocalized() {
        for &r in &[1e-5, 1e-3, 0.05, 0.2, 0.9] {
            assert!(classify(0.5, r, 0.0).is_delocalized());
        }
    }

    #[test]
    fn rejects_ohmic() {
        let p = SpinBosonPoint::scaled(1.0, 0.1, 0.1).unwrap();
        assert!(matches!(subohmic_regime(&p), Err(Error::WrongModel(_))));
    }
}
