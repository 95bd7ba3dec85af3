use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::xlogx;

const TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingEntropy {
    pub entropy: f64,
    /// Sum of the retained eigenvalues.
    pub trace: f64,
    /// Weight of the discarded momenta `|n| > n_max`.
    pub tail: f64,
}

/// Entropy of `e^{-a(x-x')²}/L` on a ring of circumference `L` from its
/// plane-wave eigenvalues `λ_n = (1/L) √(π/a) e^{-k²/4a}`, `k = 2πn/L`.
pub fn ring_kernel_entropy(a: f64, length: f64, n_max: usize) -> Result<RingEntropy> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain("a", a, "width must be positive"));
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::domain("length", length, "ring length must be positive"));
    }
    let pref = (PI / a).sqrt() / length;
    let lambda = |n: usize| {
        let k = 2.0 * PI * n as f64 / length;
        pref * (-k * k / (4.0 * a)).exp()
    };

    let mut trace = lambda(0);
    let mut entropy = -xlogx(lambda(0));
    for n in 1..=n_max {
        let l = lambda(n);
        trace += 2.0 * l;
        entropy -= 2.0 * xlogx(l);
    }

    let mut tail = 0.0;
    let mut n = n_max + 1;
    loop {
        let l = lambda(n);
        tail += 2.0 * l;
        if l < 1e-300 || l < 1e-18 * tail {
            break;
        }
        n += 1;
    }
    if tail > TAIL_TOL {
        return Err(Error::Numerical(format!(
            "ring spectrum truncated at n_max = {n_max} leaves weight {tail:e}"
        )));
    }
    Ok(RingEntropy {
        entropy,
        trace,
        tail,
    })
}
