//! One-loop flow of `κ̃ = αΛ/Δ` on the delocalised side of the sub-Ohmic
//! fixed point, with `Δ` held at `Δ₀`.
//!
//! `dκ̃/dℓ = -sκ̃ + κ̃²` with `ℓ = ln(Λ₀/Λ)` is a Bernoulli equation; with
//! `u = (Λ/Λ₀)^s` its solution is `κ̃ = s κ̃₀ u / (s - κ̃₀(1-u))`.

use serde::{Deserialize, Serialize};

use super::SpinBosonPoint;
use crate::error::{Error, Result};
use crate::numerics::integrate;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowState {
    pub lambda: f64,
    pub delta: f64,
    pub kappa_tilde: f64,
    /// `∫_Λ^{Λ₀} (Δ₀/Λ')² dΛ'`.
    pub free_energy_accum: f64,
    /// Accumulated reduction of `⟨σx⟩`: `∫_Λ^{Λ₀} κ̃ Δ₀/Λ'² dΛ'`.
    pub sx_deficit: f64,
    /// Set once the deficit reaches 1, i.e. coherence is gone.
    pub incoherent: bool,
}

/// Closed-form one-loop `κ̃` at `Λ/Λ₀ = ratio`.
pub fn kappa_tilde(kappa0: f64, s: f64, ratio: f64) -> f64 {
    let u = ratio.powf(s);
    s * kappa0 * u / (s - kappa0 * (1.0 - u))
}

pub fn subohmic_rg_flow(point: &SpinBosonPoint, lambda_stop: f64) -> Result<FlowState> {
    let s = point.bath.s;
    if !(s < 1.0) {
        return Err(Error::WrongModel("a sub-Ohmic bath (s < 1)"));
    }
    let cutoff = point.bath.cutoff;
    if !(lambda_stop > 0.0 && lambda_stop <= cutoff) {
        return Err(Error::domain("lambda_stop", lambda_stop, "must lie in (0, cutoff]"));
    }
    let kappa0 = point.alpha() * cutoff / point.delta0;
    if kappa0 > s {
        return Err(Error::Regime(format!(
            "kappa0 = {kappa0} exceeds the fixed point s = {s}; the flow runs away"
        )));
    }
    let d0 = point.delta0;
    let deficit = integrate(
        |u: f64| {
            let lam = u.exp();
            kappa_tilde(kappa0, s, lam / cutoff) * d0 / lam
        },
        lambda_stop.ln(),
        cutoff.ln(),
        1e-11,
    )?;
    Ok(FlowState {
        lambda: lambda_stop,
        delta: d0,
        kappa_tilde: kappa_tilde(kappa0, s, lambda_stop / cutoff),
        free_energy_accum: d0 * d0 * (1.0 / lambda_stop - 1.0 / cutoff),
        sx_deficit: deficit,
        incoherent: deficit >= 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(s: f64, kappa0: f64, ratio: f64) -> SpinBosonPoint {
        SpinBosonPoint::scaled(s, kappa0 * ratio, ratio).unwrap()
    }

    #[test]
    fn closed_form_solves_the_flow_equation() {
        // dκ̃/dℓ against -sκ̃ + κ̃² by finite differences in ℓ
        let (s, k0) = (0.5, 0.3);
        for &ell in &[0.1, 1.0, 5.0] {
            let k = |l: f64| kappa_tilde(k0, s, (-l).exp());
            let d = crate::numerics::derivative(k, ell, 1e-4);
            let kt = k(ell);
            assert!((d - (-s * kt + kt * kt)).abs() < 1e-9);
        }
    }

    #[test]
    fn fixed_point_is_stationary() {
        let p = point(0.5, 0.5, 0.1);
        for &r in &[1.0, 0.1, 1e-2, 1e-3] {
            let st = subohmic_rg_flow(&p, r).unwrap();
            assert!((st.kappa_tilde - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn deficit_matches_antiderivative_for_linearised_flow() {
        // κ̃₀ ≪ s: κ̃ ≈ κ̃₀ (Λ/Λ₀)^s, deficit ≈ κ̃₀Δ₀/(1-s) (Λ^{s-1} - 1) for Λ₀ = 1
        let (s, k0, r) = (0.5, 1e-6, 0.1);
        let st = subohmic_rg_flow(&point(s, k0, r), 1e-4).unwrap();
        let approx = k0 * r / (1.0 - s) * (1e-4f64.powf(s - 1.0) - 1.0);
        assert!(((st.sx_deficit - approx) / approx).abs() < 1e-4);
    }

    #[test]
    fn deficit_diverges_and_flags_incoherence() {
        let p = point(0.5, 0.01, 0.01);
        let shallow = subohmic_rg_flow(&p, 1e-3).unwrap();
        let deep = subohmic_rg_flow(&p, 1e-12).unwrap();
        assert!(!shallow.incoherent);
        assert!(deep.sx_deficit > 100.0 * shallow.sx_deficit);
        assert!(deep.incoherent);
    }

    #[test]
    fn free_energy_accumulates() {
        let st = subohmic_rg_flow(&point(0.5, 0.1, 0.01), 0.1).unwrap();
        assert!((st.free_energy_accum - 1e-4 * 9.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_runaway_and_wrong_model() {
        assert!(matches!(
            subohmic_rg_flow(&point(0.5, 0.6, 0.1), 0.1),
            Err(Error::Regime(_))
        ));
        assert!(matches!(
            subohmic_rg_flow(&point(1.0, 0.1, 0.1), 0.1),
            Err(Error::WrongModel(_))
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn kappa_stays_below_fixed_point(s in 0.1f64..0.99, frac in 0.0f64..1.0, lr in 0.0f64..10.0) {
                let k0 = frac * s;
                let k = kappa_tilde(k0, s, 10f64.powf(-lr));
                prop_assert!(k >= 0.0 && k <= k0 * (1.0 + 1e-12));
            }
        }
    }
}
