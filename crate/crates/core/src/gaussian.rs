//! Gaussian reduced states: the dissipative free particle and the damped
//! harmonic oscillator coupled to an Ohmic bath `J(ω) = ηω` below `ω_c`.

use std::f64::consts::{FRAC_2_PI, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::gaussian_entropy;

/// Half-width of the window around `κ = 1` where `f(κ)` is summed as a series.
pub const F_SERIES_WINDOW: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeParticleParams {
    pub eta: f64,
    pub omega_c: f64,
    /// Regulator length. The entropy is only defined relative to it.
    pub length: f64,
    pub dim: u32,
}

impl FreeParticleParams {
    pub fn new(eta: f64, omega_c: f64, length: f64, dim: u32) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::domain("eta", eta, "friction must be positive"));
        }
        if !(omega_c > 0.0 && omega_c.is_finite()) {
            return Err(Error::domain("omega_c", omega_c, "cutoff must be positive"));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::domain("length", length, "regulator length must be positive"));
        }
        if dim == 0 {
            return Err(Error::domain("dim", 0.0, "dimension must be at least 1"));
        }
        Ok(Self {
            eta,
            omega_c,
            length,
            dim,
        })
    }
}

/// Entropy of the free particle together with the `aL²` it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeParticleEntropy {
    pub entropy: f64,
    pub a_l2: f64,
}

/// `a = (η/4π) ln(1 + ω_c²/η²)`.
pub fn free_particle_kernel_width(p: &FreeParticleParams) -> f64 {
    let ratio = p.omega_c / p.eta;
    p.eta / (4.0 * PI) * (ratio * ratio).ln_1p()
}

pub fn free_particle_entropy(p: &FreeParticleParams) -> FreeParticleEntropy {
    free_particle_entropy_from_width(free_particle_kernel_width(p), p.length, p.dim)
}

/// `S = (d/2)(ln(aL²) + 1 - ln π)`.
pub fn free_particle_entropy_from_width(a: f64, length: f64, dim: u32) -> FreeParticleEntropy {
    let a_l2 = a * length * length;
    FreeParticleEntropy {
        entropy: 0.5 * dim as f64 * (a_l2.ln() + 1.0 - PI.ln()),
        a_l2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    pub omega0: f64,
    pub eta: f64,
    pub omega_c: f64,
}

impl OscillatorParams {
    pub fn new(omega0: f64, eta: f64, omega_c: f64) -> Result<Self> {
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(Error::domain("omega0", omega0, "frequency must be positive"));
        }
        if !(eta >= 0.0 && eta.is_finite()) {
            return Err(Error::domain("eta", eta, "friction must be non-negative"));
        }
        if !(omega_c > 0.0 && omega_c.is_finite()) {
            return Err(Error::domain("omega_c", omega_c, "cutoff must be positive"));
        }
        Ok(Self {
            omega0,
            eta,
            omega_c,
        })
    }

    pub fn from_kappa(omega0: f64, kappa: f64, omega_c: f64) -> Result<Self> {
        Self::new(omega0, 2.0 * omega0 * kappa, omega_c)
    }

    /// Dimensionless coupling `α = η/(2πω₀) = κ/π`.
    pub fn from_alpha(omega0: f64, alpha: f64, omega_c: f64) -> Result<Self> {
        Self::new(omega0, 2.0 * PI * omega0 * alpha, omega_c)
    }

    pub fn kappa(&self) -> f64 {
        self.eta / (2.0 * self.omega0)
    }

    pub fn alpha(&self) -> f64 {
        self.kappa() / PI
    }
}

/// Second moments of the system coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentPair {
    pub q2: f64,
    pub p2: f64,
}

impl MomentPair {
    pub fn new(q2: f64, p2: f64) -> Result<Self> {
        if !(q2 > 0.0 && q2.is_finite()) {
            return Err(Error::domain("q2", q2, "position variance must be positive"));
        }
        if !(p2 > 0.0 && p2.is_finite()) {
            return Err(Error::domain("p2", p2, "momentum variance must be positive"));
        }
        Ok(Self { q2, p2 })
    }

    /// Symplectic eigenvalue `ν = √(⟨q²⟩⟨p²⟩)`.
    pub fn nu(&self) -> f64 {
        (self.q2 * self.p2).sqrt()
    }

    pub fn eps(&self) -> f64 {
        1.0 / self.nu()
    }

    pub fn eps_tilde(&self) -> f64 {
        eps_tilde(self.eps())
    }

    pub fn a_over_b(&self) -> f64 {
        4.0 * self.q2 * self.p2
    }

    pub fn kernel(&self) -> GaussianKernel {
        GaussianKernel {
            a: 0.5 * self.p2,
            b: 1.0 / (8.0 * self.q2),
            norm: KernelNorm::Normalized,
        }
    }
}

/// `ε̃ = ε √(1-ε) / √(1-ε²/4)`.
pub fn eps_tilde(eps: f64) -> f64 {
    eps * (1.0 - eps).sqrt() / (1.0 - 0.25 * eps * eps).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum KernelNorm {
    /// `e^{-a(x-x')²}/L` on a ring of circumference `L` (`b = 0`).
    Ring { length: f64 },
    /// `√(4b/π) e^{-a(x-x')² - b(x+x')²}`.
    Normalized,
}

/// `⟨x|ρ|x'⟩ ∝ exp(-a(x-x')² - b(x+x')²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianKernel {
    pub a: f64,
    pub b: f64,
    pub norm: KernelNorm,
}

impl GaussianKernel {
    pub fn normalized(a: f64, b: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::domain("b", b, "confinement must be positive"));
        }
        if !(a > b && a.is_finite()) {
            return Err(Error::domain("a", a, "must exceed b for a valid density operator"));
        }
        Ok(Self {
            a,
            b,
            norm: KernelNorm::Normalized,
        })
    }

    pub fn ring(a: f64, length: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::domain("a", a, "width must be positive"));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::domain("length", length, "ring length must be positive"));
        }
        Ok(Self {
            a,
            b: 0.0,
            norm: KernelNorm::Ring { length },
        })
    }

    /// `ν = ½ √(a/b)` for the normalized form.
    pub fn nu(&self) -> f64 {
        0.5 * (self.a / self.b).sqrt()
    }
}

/// `f(κ)` entering `⟨q²⟩ = f(κ)/(2ω₀)`.
///
/// `(2/π) arccos(κ)/√(1-κ²)` below the crossover, `(2/π) arccosh(κ)/√(κ²-1)`
/// above it. Near `κ = 1` both forms cancel badly, so there the
/// hypergeometric series `(2/π) ₂F₁(1, 1; 3/2; (1-κ)/2)` is summed instead.
pub fn oscillator_f(kappa: f64) -> Result<f64> {
    if !(kappa >= 0.0) || kappa.is_infinite() {
        return Err(Error::domain("kappa", kappa, "must be non-negative and finite"));
    }
    let t = 1.0 - kappa;
    if t.abs() < F_SERIES_WINDOW {
        let z = 0.5 * t;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..60 {
            // ratio of consecutive terms of k!/(3/2)_k z^k
            term *= (k as f64 + 1.0) / (k as f64 + 1.5) * z;
            sum += term;
            if term.abs() < 1e-18 * sum {
                break;
            }
        }
        return Ok(FRAC_2_PI * sum);
    }
    if kappa < 1.0 {
        let root = ((1.0 - kappa) * (1.0 + kappa)).sqrt();
        Ok(FRAC_2_PI * kappa.acos() / root)
    } else {
        let root = ((kappa - 1.0) * (kappa + 1.0)).sqrt();
        Ok(FRAC_2_PI * kappa.acosh() / root)
    }
}

/// Large-cutoff ground-state moments of the damped oscillator.
pub fn oscillator_moments(p: &OscillatorParams) -> Result<MomentPair> {
    if !(p.omega_c > p.omega0) {
        return Err(Error::Regime(format!(
            "cutoff omega_c = {} must exceed omega0 = {}",
            p.omega_c, p.omega0
        )));
    }
    let kappa = p.kappa();
    let q2 = oscillator_f(kappa)? / (2.0 * p.omega0);
    let p2 = p.omega0 * p.omega0 * (1.0 - 2.0 * kappa * kappa) * q2
        + 2.0 * p.omega0 * kappa / PI * (p.omega_c / p.omega0).ln();
    if !(p2 > 0.0) {
        return Err(Error::Regime(format!(
            "momentum variance {p2} is not positive at kappa = {kappa}; \
             the large-cutoff formula does not hold here"
        )));
    }
    let m = MomentPair::new(q2, p2)?;
    if m.nu() < 0.5 * (1.0 - 1e-12) {
        return Err(Error::Regime(format!(
            "nu = {} violates the uncertainty bound at kappa = {kappa}",
            m.nu()
        )));
    }
    Ok(m)
}

/// `S = -[(ε̃/ε) ln ε̃ + (ε̃/ε²) ln(1-ε)]` with `ε = 1/ν`.
pub fn oscillator_entropy_expansion(m: &MomentPair) -> Result<f64> {
    let eps = m.eps();
    if !(eps < 1.0) {
        return Err(Error::Regime(format!(
            "expansion needs eps < 1, got eps = {eps} (nu = {})",
            m.nu()
        )));
    }
    let et = eps_tilde(eps);
    Ok(-(et / eps * et.ln() + et / (eps * eps) * (-eps).ln_1p()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntropyMethod {
    Expansion,
    #[default]
    Exact,
}

pub fn oscillator_entropy(p: &OscillatorParams, method: EntropyMethod) -> Result<f64> {
    let m = oscillator_moments(p)?;
    match method {
        EntropyMethod::Expansion => oscillator_entropy_expansion(&m),
        EntropyMethod::Exact => gaussian_entropy(m.nu().max(0.5)),
    }
}
