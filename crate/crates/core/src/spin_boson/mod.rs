//! Unbiased spin-boson model: renormalised tunneling, ground-state energy,
//! `⟨σx⟩` and the spin's entanglement entropy.
//!
//! The ground state of `(Δ₀/2)σx` has `⟨σx⟩ = -1`. Everything here reports
//! the magnitude `|⟨σx⟩|`; the entropy is even in `⟨σx⟩` so nothing else
//! depends on the sign.

mod flow;
mod ohmic;
mod regime;
mod renorm;
mod rg;

pub use flow::{flow_free_energy, free_tls_sigma_x, FreeTlsSigmaX, FLOW_REL_TOL};
pub use ohmic::{ohmic_ground_energy, ohmic_ground_energy_derivative, MIDDLE_BRANCH_WINDOW};
pub use regime::{subohmic_regime, subohmic_regime_with, SubOhmicRegime, SCALING_LIMIT_RATIO};
pub use renorm::{
    delta_ren, delta_ren_derivative, max_rule, max_rule_crossover, DeltaRen, MaxRule,
    MaxRuleBranch, DELTA_REN_FLOOR,
};
pub use rg::{kappa_tilde, subohmic_rg_flow, FlowState};

use serde::{Deserialize, Serialize};

use crate::bath::BathSpec;
use crate::error::{Error, Result};
use crate::numerics::xlogx;

/// Constant `C` multiplying the Ohmic ground-state energy.
pub const DEFAULT_SCALING_CONSTANT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinBosonPoint {
    pub delta0: f64,
    pub bath: BathSpec,
    pub temperature: f64,
    pub scaling_constant: f64,
}

impl SpinBosonPoint {
    pub fn new(delta0: f64, bath: BathSpec, temperature: f64, scaling_constant: f64) -> Result<Self> {
        if !(delta0 > 0.0 && delta0.is_finite()) {
            return Err(Error::domain("delta0", delta0, "tunneling must be positive"));
        }
        if !(delta0 < bath.cutoff) {
            return Err(Error::domain("delta0", delta0, "must lie below the cutoff"));
        }
        if !(temperature >= 0.0 && temperature.is_finite()) {
            return Err(Error::domain("temperature", temperature, "must be non-negative"));
        }
        if !(scaling_constant > 0.0 && scaling_constant.is_finite()) {
            return Err(Error::domain("scaling_constant", scaling_constant, "must be positive"));
        }
        Ok(Self {
            delta0,
            bath,
            temperature,
            scaling_constant,
        })
    }

    /// Zero temperature, `C = 1`.
    pub fn ground(delta0: f64, bath: BathSpec) -> Result<Self> {
        Self::new(delta0, bath, 0.0, DEFAULT_SCALING_CONSTANT)
    }

    /// Convenience: `Λ₀ = 1`, tunneling given as the ratio `Δ₀/Λ₀`.
    pub fn scaled(s: f64, alpha: f64, ratio: f64) -> Result<Self> {
        Self::ground(ratio, BathSpec::new(s, alpha, 1.0)?)
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(
            self.delta0,
            self.bath.with_alpha(alpha)?,
            self.temperature,
            self.scaling_constant,
        )
    }

    pub fn with_delta0(&self, delta0: f64) -> Result<Self> {
        Self::new(delta0, self.bath, self.temperature, self.scaling_constant)
    }

    /// `Δ₀/Λ₀`.
    pub fn ratio(&self) -> f64 {
        self.delta0 / self.bath.cutoff
    }

    pub fn alpha(&self) -> f64 {
        self.bath.alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedSpinState {
    pub sx: f64,
    pub sz: f64,
    pub entropy: f64,
}

impl ReducedSpinState {
    pub fn from_sigma_x(sx: f64) -> Result<Self> {
        Ok(Self {
            sx: sx.abs(),
            sz: 0.0,
            entropy: spin_entropy(sx)?,
        })
    }
}

/// Entropy of `ρ = ½(1 + ⟨σx⟩σx)`, evaluated from its eigenvalues `(1±⟨σx⟩)/2`.
pub fn spin_entropy(sx: f64) -> Result<f64> {
    if !(sx.abs() <= 1.0) {
        return Err(Error::domain("sx", sx, "|<sigma_x>| must not exceed 1"));
    }
    Ok(-(xlogx(0.5 * (1.0 + sx)) + xlogx(0.5 * (1.0 - sx))))
}

/// Which derivative defines `⟨σx⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaXConvention {
    /// `∂F/∂Δ₀`. Gives `⟨σx⟩ → 1` for the free spin.
    #[default]
    FreeEnergy,
    /// `2∂E/∂Δ₀`, clipped to 1.
    GroundEnergy,
}

/// How `F(Δ₀)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaXRoute {
    /// Ohmic piecewise energy, differentiated analytically.
    ClosedForm,
    /// `max(Δ_ren, Δ₀²/Λ₀)`.
    MaxRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SigmaXOptions {
    pub convention: SigmaXConvention,
    /// `None` picks the closed form for `s = 1` and the max rule otherwise.
    pub route: Option<SigmaXRoute>,
}

pub fn sigma_x(point: &SpinBosonPoint) -> Result<f64> {
    sigma_x_with(point, SigmaXOptions::default())
}

/// Zero-temperature `|⟨σx⟩|` in `[0, 1]`.
pub fn sigma_x_with(point: &SpinBosonPoint, opts: SigmaXOptions) -> Result<f64> {
    if point.temperature > 0.0 {
        return Err(Error::Regime(
            "sigma_x is a zero-temperature quantity; use flow_free_energy for T > 0".into(),
        ));
    }
    let route = opts.route.unwrap_or(if point.bath.is_ohmic() {
        SigmaXRoute::ClosedForm
    } else {
        SigmaXRoute::MaxRule
    });
    let derivative = match route {
        SigmaXRoute::ClosedForm => ohmic_ground_energy_derivative(point)?,
        SigmaXRoute::MaxRule => max_rule(point)?.derivative,
    };
    let factor = match opts.convention {
        SigmaXConvention::FreeEnergy => 1.0,
        SigmaXConvention::GroundEnergy => 2.0,
    };
    Ok((factor * derivative).clamp(0.0, 1.0))
}

/// `|⟨σx⟩|` together with the entropy it implies.
pub fn reduced_state(point: &SpinBosonPoint, opts: SigmaXOptions) -> Result<ReducedSpinState> {
    ReducedSpinState::from_sigma_x(sigma_x_with(point, opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn paper_form(sx: f64) -> f64 {
        -0.5 * (((1.0 - sx * sx) / 4.0).ln() + sx * ((1.0 + sx) / (1.0 - sx)).ln())
    }

    #[test]
    fn spin_entropy_examples() {
        assert!((spin_entropy(0.0).unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(spin_entropy(1.0).unwrap(), 0.0);
        assert_eq!(spin_entropy(-1.0).unwrap(), 0.0);
        let s = spin_entropy(0.5).unwrap();
        assert!((s - (-0.75 * 0.75f64.ln() - 0.25 * 0.25f64.ln())).abs() < 1e-15);
        assert!((s - 0.562335).abs() < 1e-6);
        assert!(spin_entropy(1.0 + 1e-9).is_err());
    }

    #[test]
    fn spin_entropy_matches_log_form() {
        for &sx in &[-0.9, -0.3, 0.1, 0.5, 0.99] {
            assert!((spin_entropy(sx).unwrap() - paper_form(sx)).abs() < 1e-14);
        }
    }

    #[test]
    fn point_validation() {
        let b = BathSpec::ohmic(0.1, 1.0).unwrap();
        assert!(SpinBosonPoint::ground(1.0, b).is_err());
        assert!(SpinBosonPoint::ground(0.0, b).is_err());
        assert!(SpinBosonPoint::new(0.1, b, -1.0, 1.0).is_err());
        assert!(SpinBosonPoint::new(0.1, b, 0.0, 0.0).is_err());
    }

    #[test]
    fn free_spin_sigma_x() {
        let p = SpinBosonPoint::scaled(1.0, 0.0, 1e-4).unwrap();
        let sx = sigma_x(&p).unwrap();
        assert!((sx - (1.0 - 2e-4)).abs() < 1e-12);
        let p = SpinBosonPoint::scaled(2.0, 0.0, 1e-4).unwrap();
        assert!((sigma_x(&p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ground_energy_convention_doubles_and_clips() {
        let p = SpinBosonPoint::scaled(1.0, 0.7, 0.01).unwrap();
        let one = sigma_x(&p).unwrap();
        let two = sigma_x_with(
            &p,
            SigmaXOptions {
                convention: SigmaXConvention::GroundEnergy,
                route: None,
            },
        )
        .unwrap();
        assert!((two - 2.0 * one).abs() < 1e-15);
        let p = SpinBosonPoint::scaled(1.0, 0.0, 0.01).unwrap();
        let two = sigma_x_with(
            &p,
            SigmaXOptions {
                convention: SigmaXConvention::GroundEnergy,
                route: None,
            },
        )
        .unwrap();
        assert_eq!(two, 1.0);
    }

    #[test]
    fn closed_form_requires_ohmic() {
        let p = SpinBosonPoint::scaled(0.5, 0.1, 0.5).unwrap();
        let opts = SigmaXOptions {
            route: Some(SigmaXRoute::ClosedForm),
            ..Default::default()
        };
        assert!(matches!(sigma_x_with(&p, opts), Err(Error::WrongModel(_))));
    }

    #[test]
    fn super_ohmic_sigma_x_follows_exponential() {
        // ⟨σx⟩ ≈ e^{-α/(s-1)} on the renormalised side of the crossover
        let p = SpinBosonPoint::scaled(2.0, 1.0, 1e-3).unwrap();
        let sx = sigma_x(&p).unwrap();
        assert!(((sx - (-1.0f64).exp()) / sx).abs() < 1e-2);
    }

    #[test]
    fn entropy_saturates_past_half() {
        let p = SpinBosonPoint::scaled(1.0, 0.8, 0.01).unwrap();
        let st = reduced_state(&p, SigmaXOptions::default()).unwrap();
        assert!(st.entropy >= 0.95 * LN_2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn entropy_bounded_and_even(sx in -1.0f64..=1.0) {
                let s = spin_entropy(sx).unwrap();
                prop_assert!((0.0..=LN_2 + 1e-15).contains(&s));
                prop_assert_eq!(s, spin_entropy(-sx).unwrap());
            }

            #[test]
            fn sigma_x_in_unit_interval(s in 0.3f64..3.0, alpha in 0.0f64..3.0, lr in 1.0f64..6.0) {
                let p = SpinBosonPoint::scaled(s, alpha, 10f64.powf(-lr)).unwrap();
                let sx = sigma_x(&p).unwrap();
                prop_assert!((0.0..=1.0).contains(&sx));
            }
        }
    }
}
