//! Finite discretisation of a continuous bath and the exact ground-state
//! moments of an oscillator linearly coupled to it.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::bath::BathSpec;
use crate::error::{Error, Result};
use crate::gaussian::OscillatorParams;

/// Default infrared edge of the discretised bath, in units of `ω₀`.
pub const DEFAULT_OMEGA_MIN_RATIO: f64 = 1e-3;

const MIN_MODES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Linear,
    #[default]
    Logarithmic,
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Scheme::Linear),
            "logarithmic" | "log" => Ok(Scheme::Logarithmic),
            other => Err(Error::config("scheme", format!("unknown scheme `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathMode {
    pub omega: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteBath {
    pub modes: Vec<BathMode>,
    pub scheme: Scheme,
}

impl DiscreteBath {
    /// Bins `[ω_min, ω_max]` and assigns each bin the weight `∫_bin J`
    /// through `weight(lo, hi)`; `coupling(ω, w)` turns it into `λ`.
    fn build(
        omega_min: f64,
        omega_max: f64,
        n: usize,
        scheme: Scheme,
        weight: impl Fn(f64, f64) -> f64,
        coupling: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::config("n_modes", "need at least one mode"));
        }
        if !(omega_min > 0.0 && omega_max > omega_min) {
            return Err(Error::config(
                "omega_min",
                format!("need 0 < omega_min < omega_max, got {omega_min} and {omega_max}"),
            ));
        }
        let edge = |i: usize| match scheme {
            Scheme::Linear => omega_min + (omega_max - omega_min) * i as f64 / n as f64,
            Scheme::Logarithmic => omega_min * (omega_max / omega_min).powf(i as f64 / n as f64),
        };
        let modes = (0..n)
            .map(|i| {
                let (lo, hi) = (edge(i), edge(i + 1));
                let omega = match scheme {
                    Scheme::Linear => 0.5 * (lo + hi),
                    Scheme::Logarithmic => (lo * hi).sqrt(),
                };
                BathMode {
                    omega,
                    lambda: coupling(omega, weight(lo, hi)),
                }
            })
            .collect();
        Ok(Self { modes, scheme })
    }

    /// Ohmic bath `J = ηω` below `ω_c` in the oscillator convention
    /// `J(ω) = (π/2) Σ λ²/ω δ(ω-ω_α)`, i.e. `λ² = (2/π) ω ∫_bin J`.
    pub fn ohmic_oscillator(
        eta: f64,
        omega_min: f64,
        omega_c: f64,
        n: usize,
        scheme: Scheme,
    ) -> Result<Self> {
        Self::build(
            omega_min,
            omega_c,
            n,
            scheme,
            |lo, hi| 0.5 * eta * (hi * hi - lo * lo),
            |w, integral| (2.0 / PI * w * integral).sqrt(),
        )
    }

    /// Spin-boson convention `J(ω) = Σ λ² δ(ω-ω_k)`, i.e. `λ² = ∫_bin J`.
    pub fn spin_boson(bath: &BathSpec, omega_min: f64, n: usize, scheme: Scheme) -> Result<Self> {
        let s = bath.s;
        let pref = 2.0 * bath.alpha * bath.cutoff.powf(1.0 - s);
        Self::build(
            omega_min,
            bath.cutoff,
            n,
            scheme,
            |lo, hi| pref * (hi.powf(s + 1.0) - lo.powf(s + 1.0)) / (s + 1.0),
            |_, integral| integral.sqrt(),
        )
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Multiplies every coupling by `g`.
    pub fn scaled(&self, g: f64) -> Self {
        Self {
            modes: self
                .modes
                .iter()
                .map(|m| BathMode {
                    omega: m.omega,
                    lambda: g * m.lambda,
                })
                .collect(),
            scheme: self.scheme,
        }
    }
}

/// Reduced moments of the system coordinate from the full quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceResult {
    pub q2: f64,
    pub p2: f64,
    pub nu: f64,
}

/// Ohmic oscillator bath discretised between `10⁻³ω₀` and `ω_c`.
pub fn discrete_bath_moments(
    p: &OscillatorParams,
    n_modes: usize,
    scheme: Scheme,
) -> Result<CovarianceResult> {
    if n_modes < MIN_MODES {
        return Err(Error::config(
            "n_modes",
            format!("need at least {MIN_MODES} modes, got {n_modes}"),
        ));
    }
    let bath = DiscreteBath::ohmic_oscillator(
        p.eta,
        DEFAULT_OMEGA_MIN_RATIO * p.omega0,
        p.omega_c,
        n_modes,
        scheme,
    )?;
    discrete_bath_moments_with(p.omega0, &bath)
}

/// Ground state of `H = p²/2 + ω₀²q²/2 + Σ [p_α²/2 + ω_α²/2 (x_α - λ_α q/ω_α²)²]`.
///
/// With unit masses the potential is `½ xᵀKx` and the ground state has
/// `⟨xxᵀ⟩ = ½ K^{-1/2}`, `⟨ppᵀ⟩ = ½ K^{1/2}`.
pub fn discrete_bath_moments_with(omega0: f64, bath: &DiscreteBath) -> Result<CovarianceResult> {
    let n = bath.len() + 1;
    let mut k = DMatrix::<f64>::zeros(n, n);
    let counter: f64 = bath
        .modes
        .iter()
        .map(|m| m.lambda * m.lambda / (m.omega * m.omega))
        .sum();
    k[(0, 0)] = omega0 * omega0 + counter;
    for (i, m) in bath.modes.iter().enumerate() {
        if !(m.omega > 0.0) {
            return Err(Error::Numerical(format!("mode {i} has frequency {}", m.omega)));
        }
        k[(0, i + 1)] = -m.lambda;
        k[(i + 1, 0)] = -m.lambda;
        k[(i + 1, i + 1)] = m.omega * m.omega;
    }
    let eig = SymmetricEigen::new(k);
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > 0.0) {
        return Err(Error::Numerical(format!(
            "quadratic form is not positive definite (smallest eigenvalue {min:e})"
        )));
    }
    let (mut q2, mut p2) = (0.0, 0.0);
    for (j, &w2) in eig.eigenvalues.iter().enumerate() {
        let v0 = eig.eigenvectors[(0, j)];
        let w = w2.sqrt();
        q2 += 0.5 * v0 * v0 / w;
        p2 += 0.5 * v0 * v0 * w;
    }
    Ok(CovarianceResult {
        q2,
        p2,
        nu: (q2 * p2).sqrt(),
    })
}
