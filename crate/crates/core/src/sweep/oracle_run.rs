use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{FixedParams, Model};
use crate::bath::BathSpec;
use crate::error::{Error, Result};
use crate::gaussian::{
    free_particle_entropy, oscillator_moments, FreeParticleParams, OscillatorParams,
    free_particle_kernel_width,
};
use crate::oracle::{discrete_bath_moments, gaussian_entropy, ring_kernel_entropy, shannon, Scheme};
use crate::spin_boson::{sigma_x_with, SigmaXOptions, SpinBosonPoint};

/// `-ln λ` at which ring eigenvalues are dropped by the automatic cutoff.
const RING_LOG_DEPTH: f64 = 745.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleKnobs {
    pub alpha: Option<f64>,
    /// Friction `η`; converted to `α = η/(2πω₀)` when `alpha` is absent.
    pub eta: Option<f64>,
    pub n_modes: usize,
    pub scheme: Scheme,
    /// Largest ring momentum kept; `None` picks one from the kernel width.
    pub n_max: Option<usize>,
    /// Spin-boson: test this `⟨σx⟩` instead of the computed one.
    pub sigma_x: Option<f64>,
}

impl Default for OracleKnobs {
    fn default() -> Self {
        Self {
            alpha: None,
            eta: None,
            n_modes: 400,
            scheme: Scheme::Logarithmic,
            n_max: None,
            sigma_x: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub observable: String,
    pub analytic: f64,
    pub oracle: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

impl Comparison {
    fn new(observable: &str, analytic: f64, oracle: f64) -> Self {
        let abs_err = (analytic - oracle).abs();
        Self {
            observable: observable.to_string(),
            analytic,
            oracle,
            abs_err,
            rel_err: if analytic != 0.0 {
                abs_err / analytic.abs()
            } else {
                abs_err
            },
        }
    }
}

fn coupling(fixed: &FixedParams, knobs: &OracleKnobs) -> Result<f64> {
    match (knobs.alpha, knobs.eta) {
        (Some(a), _) => Ok(a),
        (None, Some(eta)) => Ok(eta / (2.0 * PI * fixed.omega0)),
        (None, None) => Err(Error::config("alpha", "give either alpha or eta")),
    }
}

/// `-½[ln((1-x²)/4) + x ln((1+x)/(1-x))]`, the logarithmic form of the
/// two-level entropy.
fn spin_entropy_log_form(sx: f64) -> f64 {
    if sx.abs() == 1.0 {
        return 0.0;
    }
    -0.5 * (((1.0 - sx * sx) / 4.0).ln() + sx * ((1.0 + sx) / (1.0 - sx)).ln())
}

/// Compares the closed forms of `model` with a brute-force reference.
pub fn oracle_run(model: Model, fixed: &FixedParams, knobs: &OracleKnobs) -> Result<Vec<Comparison>> {
    match model {
        Model::Oscillator => {
            let alpha = coupling(fixed, knobs)?;
            let p = OscillatorParams::from_alpha(fixed.omega0, alpha, fixed.omega_c)?;
            let m = oscillator_moments(&p)?;
            let d = discrete_bath_moments(&p, knobs.n_modes, knobs.scheme)?;
            Ok(vec![
                Comparison::new("q2", m.q2, d.q2),
                Comparison::new("p2", m.p2, d.p2),
                Comparison::new("nu", m.nu(), d.nu),
                Comparison::new(
                    "S",
                    gaussian_entropy(m.nu().max(0.5))?,
                    gaussian_entropy(d.nu.max(0.5))?,
                ),
            ])
        }
        Model::FreeParticle => {
            let alpha = coupling(fixed, knobs)?;
            let length = fixed
                .length
                .ok_or_else(|| Error::config("length", "the free particle needs a regulator length"))?;
            let eta = 2.0 * PI * fixed.omega0 * alpha;
            let p = FreeParticleParams::new(eta, fixed.omega_c, length, fixed.dim)?;
            let a = free_particle_kernel_width(&p);
            let n_max = knobs.n_max.unwrap_or_else(|| {
                (length * (4.0 * a * RING_LOG_DEPTH).sqrt() / (2.0 * PI)).ceil() as usize + 16
            });
            let ring = ring_kernel_entropy(a, length, n_max)?;
            let d = fixed.dim as f64;
            Ok(vec![
                Comparison::new("S", free_particle_entropy(&p).entropy, d * ring.entropy),
                Comparison::new("trace", 1.0, ring.trace),
            ])
        }
        Model::SpinBoson => {
            let sx = match knobs.sigma_x {
                Some(sx) => {
                    if !(sx.abs() <= 1.0) {
                        return Err(Error::config("sigma_x", format!("|{sx}| exceeds 1")));
                    }
                    sx
                }
                None => {
                    let alpha = coupling(fixed, knobs)?;
                    let bath = BathSpec::new(fixed.s, alpha, fixed.lambda0)?;
                    let point =
                        SpinBosonPoint::new(fixed.delta0, bath, fixed.temperature, fixed.scaling_constant)?;
                    sigma_x_with(&point, SigmaXOptions::default())?
                }
            };
            let eigs = [0.5 * (1.0 + sx), 0.5 * (1.0 - sx)];
            Ok(vec![
                Comparison::new("S", spin_entropy_log_form(sx), shannon(&eigs)),
                Comparison::new("trace", 1.0, eigs[0] + eigs[1]),
            ])
        }
    }
}
