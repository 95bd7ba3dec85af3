//! Brute-force reference computations used to check the closed forms.

mod discrete;
mod ed;
mod ring;
mod trace;

pub use discrete::{
    discrete_bath_moments, discrete_bath_moments_with, BathMode, CovarianceResult, DiscreteBath,
    Scheme, DEFAULT_OMEGA_MIN_RATIO,
};
pub use ed::{spin_boson_ed, EdResult, DENSE_LIMIT, MAX_ED_DIM, MAX_ED_MODES, MAX_FOCK_CUT};
pub use ring::{ring_kernel_entropy, RingEntropy};
pub use trace::{geometric_spectrum_entropy, spectrum_series_entropy, trace_power, TracePower};

use crate::error::{Error, Result};
use crate::numerics::xlogx;

/// Entropy of a single-mode Gaussian state with symplectic eigenvalue `ν`:
/// `(ν+½) ln(ν+½) - (ν-½) ln(ν-½)`.
pub fn gaussian_entropy(nu: f64) -> Result<f64> {
    if !(nu >= 0.5) || nu.is_infinite() {
        return Err(Error::domain("nu", nu, "symplectic eigenvalue must be at least 1/2"));
    }
    let lo = nu - 0.5;
    if lo == 0.0 {
        return Ok(0.0);
    }
    // ln(ν+½) + (ν-½) ln(1 + 1/(ν-½)); no cancellation at large ν
    Ok((nu + 0.5).ln() + lo * (1.0 / lo).ln_1p())
}

/// `-Σ p ln p` over a probability vector.
pub fn shannon(probs: &[f64]) -> f64 {
    -probs.iter().map(|&p| xlogx(p.max(0.0))).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_entropy_examples() {
        assert_eq!(gaussian_entropy(0.5).unwrap(), 0.0);
        let direct = 1.5 * 1.5f64.ln() - 0.5 * 0.5f64.ln();
        assert!((gaussian_entropy(1.0).unwrap() - direct).abs() < 1e-15);
        assert!((gaussian_entropy(1.0).unwrap() - 0.954771).abs() < 1e-6);
        let big = 1e4;
        assert!((gaussian_entropy(big).unwrap() - (big.ln() + 1.0)).abs() < 1e-6);
        assert!(gaussian_entropy(0.49).is_err());
    }

    #[test]
    fn gaussian_entropy_matches_thermal_occupation_sum() {
        // ν = n̄ + ½ for a thermal mode; S = -Σ p_k ln p_k with geometric p_k
        for &nbar in &[0.1, 1.0, 7.5] {
            let q: f64 = nbar / (nbar + 1.0);
            let probs: Vec<f64> = (0..4000).map(|k| (1.0 - q) * q.powi(k)).collect();
            let s = shannon(&probs);
            assert!((s - gaussian_entropy(nbar + 0.5).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn gaussian_entropy_increasing_on_grid() {
        let mut prev = gaussian_entropy(0.5).unwrap();
        for i in 1..2000 {
            let s = gaussian_entropy(0.5 + i as f64 * 0.01).unwrap();
            assert!(s > prev);
            prev = s;
        }
    }
}
