//! Power-law spectral densities for the spin-boson bath.
//!
//! Convention: `J(ω) = 2α ω^s Λ₀^{1-s}` for `0 ≤ ω ≤ Λ₀` and zero above the
//! (sharp) cutoff. With this normalisation the Ohmic case gives the familiar
//! `Δ(Λ) = Δ₀ (Λ/Λ₀)^α` through the ½ in the adiabatic exponent.
//!
//! The Gaussian models use a different normalisation, `J(ω) = (π/2) Σ λ²/ω δ(ω-ω_α)`,
//! which lives with the discretised bath in [`crate::oracle`]. The two are not
//! unified.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::expm1_ratio;

/// Bath exponent, coupling and sharp cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathSpec {
    pub s: f64,
    pub alpha: f64,
    pub cutoff: f64,
}

impl BathSpec {
    pub fn new(s: f64, alpha: f64, cutoff: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::domain("s", s, "bath exponent must be positive"));
        }
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::domain("alpha", alpha, "coupling must be non-negative"));
        }
        if !(cutoff > 0.0 && cutoff.is_finite()) {
            return Err(Error::domain("cutoff", cutoff, "cutoff must be positive"));
        }
        Ok(Self { s, alpha, cutoff })
    }

    pub fn ohmic(alpha: f64, cutoff: f64) -> Result<Self> {
        Self::new(1.0, alpha, cutoff)
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(self.s, alpha, self.cutoff)
    }

    pub fn is_ohmic(&self) -> bool {
        self.s == 1.0
    }

    /// `J(ω)`.
    pub fn spectral_density(&self, omega: f64) -> Result<f64> {
        if !(omega >= 0.0) {
            return Err(Error::domain("omega", omega, "frequency must be non-negative"));
        }
        if omega > self.cutoff || omega == 0.0 {
            return Ok(0.0);
        }
        Ok(2.0 * self.alpha * omega.powf(self.s) * self.cutoff.powf(1.0 - self.s))
    }

    /// `½ ∫_Λ^{Λ₀} J(ω)/ω² dω`, so that `Δ(Λ) = Δ₀ exp(-exponent)`.
    ///
    /// Evaluated from the antiderivative as `α ℓ (e^y - 1)/y` with
    /// `ℓ = ln(Λ₀/Λ)` and `y = (1-s) ℓ`, which is exact for all `s` and
    /// free of cancellation near `s = 1`.
    pub fn adiabatic_exponent(&self, lambda_low: f64) -> Result<f64> {
        if !(lambda_low > 0.0 && lambda_low <= self.cutoff) {
            return Err(Error::domain(
                "lambda_low",
                lambda_low,
                "must lie in (0, cutoff]",
            ));
        }
        Ok(self.exponent_unchecked(lambda_low))
    }

    pub(crate) fn exponent_unchecked(&self, lambda_low: f64) -> f64 {
        let ell = (self.cutoff / lambda_low).ln();
        if ell <= 0.0 {
            return 0.0;
        }
        self.alpha * ell * expm1_ratio((1.0 - self.s) * ell)
    }

    /// `-Λ d(exponent)/dΛ = ½ J(Λ)/Λ = α (Λ/Λ₀)^{s-1}`.
    pub(crate) fn log_slope(&self, lambda: f64) -> f64 {
        self.alpha * (lambda / self.cutoff).powf(self.s - 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate;

    fn quad_exponent(bath: &BathSpec, lambda: f64) -> f64 {
        // independent route: ½ ∫ J(ω)/ω² dω in ln ω
        integrate(
            |u: f64| {
                let w = u.exp();
                0.5 * bath.spectral_density(w).unwrap() / w
            },
            lambda.ln(),
            bath.cutoff.ln(),
            1e-13,
        )
        .unwrap()
    }

    #[test]
    fn spectral_density_examples() {
        let b = BathSpec::new(1.0, 0.5, 10.0).unwrap();
        assert_eq!(b.spectral_density(1.0).unwrap(), 1.0);
        assert_eq!(b.spectral_density(0.0).unwrap(), 0.0);
        let b = BathSpec::new(1.0, 0.3, 10.0).unwrap();
        assert_eq!(b.spectral_density(11.0).unwrap(), 0.0);
        assert!(b.spectral_density(-1.0).is_err());
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(BathSpec::new(0.0, 0.1, 1.0).is_err());
        assert!(BathSpec::new(1.0, -0.1, 1.0).is_err());
        assert!(BathSpec::new(1.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn adiabatic_exponent_examples() {
        let b = BathSpec::new(1.0, 0.5, 100.0).unwrap();
        let v = b.adiabatic_exponent(1.0).unwrap();
        assert!((v - 0.5 * 100f64.ln()).abs() < 1e-14);
        assert!((v - std::f64::consts::LN_10).abs() < 1e-14);
        assert_eq!(b.adiabatic_exponent(100.0).unwrap(), 0.0);
        assert!(b.adiabatic_exponent(0.0).is_err());
        assert!(b.adiabatic_exponent(101.0).is_err());

        // super-Ohmic: converges to α/(s-1)
        let b = BathSpec::new(2.0, 3.0, 10.0).unwrap();
        let v = b.adiabatic_exponent(1e-300).unwrap();
        assert!((v - 3.0).abs() < 1e-12);
    }

    #[test]
    fn antiderivative_matches_quadrature() {
        for &s in &[0.5, 0.8, 1.0, 1.5, 2.0] {
            let b = BathSpec::new(s, 0.37, 5.0).unwrap();
            for &lam in &[1e-4, 1e-2, 0.3, 2.0, 4.99] {
                let exact = b.adiabatic_exponent(lam).unwrap();
                let quad = quad_exponent(&b, lam);
                assert!(
                    (exact - quad).abs() <= 1e-10 * exact.abs(),
                    "s={s} Λ={lam}: {exact} vs {quad}"
                );
            }
        }
    }

    #[test]
    fn exponent_diverges_for_s_at_most_one() {
        for &s in &[0.5, 1.0] {
            let b = BathSpec::new(s, 0.2, 1.0).unwrap();
            assert!(b.adiabatic_exponent(1e-200).unwrap() > 50.0);
        }
    }

    #[test]
    fn log_slope_is_minus_lambda_times_derivative() {
        let b = BathSpec::new(0.7, 0.4, 3.0).unwrap();
        let lam = 0.2;
        let d = crate::numerics::derivative(|l| b.adiabatic_exponent(l).unwrap(), lam, 1e-4);
        assert!((-lam * d - b.log_slope(lam)).abs() < 1e-9);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn exponent_monotone_non_increasing(
                s in 0.2f64..3.0, alpha in 0.0f64..2.0,
                x1 in 1e-6f64..1.0, x2 in 1e-6f64..1.0,
            ) {
                let b = BathSpec::new(s, alpha, 1.0).unwrap();
                let (lo, hi) = if x1 < x2 { (x1, x2) } else { (x2, x1) };
                prop_assert!(b.adiabatic_exponent(lo).unwrap() >= b.adiabatic_exponent(hi).unwrap());
            }

            #[test]
            fn density_non_negative_and_cut(s in 0.2f64..3.0, alpha in 0.0f64..2.0, w in 0.0f64..3.0) {
                let b = BathSpec::new(s, alpha, 1.5).unwrap();
                let j = b.spectral_density(w).unwrap();
                prop_assert!(j >= 0.0);
                if w > 1.5 { prop_assert_eq!(j, 0.0); }
            }
        }
    }
}
