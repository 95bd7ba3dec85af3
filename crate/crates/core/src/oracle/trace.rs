//! `Tr ρⁿ` for the normalized Gaussian kernel, and the entropy of the
//! geometric spectrum it implies.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gaussian::{eps_tilde, GaussianKernel, KernelNorm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePower {
    pub n: u32,
    /// Cyclic `n`-dimensional Gaussian integral, evaluated exactly.
    pub direct: f64,
    /// `ε̃ⁿ/(1-(1-ε)ⁿ)` with `ε = √(4b/a)`.
    pub closed_form: f64,
    /// `εⁿ/(1-(1-ε)ⁿ)` with `ε` defined by `ε²/(2(1-ε)) = 2b/(a-b)`,
    /// i.e. `ε = 1/(ν+½)`. Exact for every `n`.
    pub geometric: f64,
}

/// `Tr ρⁿ` computed two ways.
///
/// The direct route uses the eigenvalues `2(a+b) - 2(a-b) cos(2πm/n)` of the
/// cyclic tridiagonal matrix: `Tr ρⁿ = (4b)^{n/2} / √(∏ λ_m)`.
pub fn trace_power(kernel: &GaussianKernel, n: u32) -> Result<TracePower> {
    if n == 0 {
        return Err(Error::domain("n", 0.0, "power must be at least 1"));
    }
    if kernel.norm != KernelNorm::Normalized {
        return Err(Error::WrongModel("the normalized (b > 0) kernel"));
    }
    let (a, b) = (kernel.a, kernel.b);
    if !(b > 0.0) {
        return Err(Error::domain("b", b, "confinement must be positive"));
    }
    if !(a > b) {
        return Err(Error::domain("b", b, "must be smaller than a"));
    }

    let nf = n as f64;
    let log_det: f64 = (0..n)
        .map(|m| {
            let k = 2.0 * PI * m as f64 / nf;
            (2.0 * (a + b) - 2.0 * (a - b) * k.cos()).ln()
        })
        .sum();
    let direct = (0.5 * nf * (4.0 * b).ln() - 0.5 * log_det).exp();

    let geo = |prefactor: f64, eps: f64| {
        // (1-ε)ⁿ via ln1p to keep small ε accurate
        let decay = -(nf * (-eps).ln_1p()).exp_m1();
        (nf * prefactor.ln() - decay.ln()).exp()
    };
    let eps = (4.0 * b / a).sqrt();
    let closed_form = geo(eps_tilde(eps), eps);
    let eps_sc = 1.0 / (kernel.nu() + 0.5);
    let geometric = geo(eps_sc, eps_sc);

    Ok(TracePower {
        n,
        direct,
        closed_form,
        geometric,
    })
}

/// Entropy of the spectrum `λ_j = p (1-ε)^j`, `j ≥ 0`:
/// `-[(p/ε) ln p + p (1-ε)/ε² ln(1-ε)]`.
pub fn geometric_spectrum_entropy(prefactor: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain("eps", eps, "must lie in (0, 1)"));
    }
    if !(prefactor > 0.0) {
        return Err(Error::domain("prefactor", prefactor, "must be positive"));
    }
    let p = prefactor;
    Ok(-(p / eps * p.ln() + p * (1.0 - eps) / (eps * eps) * (-eps).ln_1p()))
}

/// Same entropy by summing `-λ_j ln λ_j` term by term.
pub fn spectrum_series_entropy(prefactor: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain("eps", eps, "must lie in (0, 1)"));
    }
    let ln_r = (-eps).ln_1p();
    let ln_p = prefactor.ln();
    let mut sum = 0.0;
    let mut j = 0u64;
    loop {
        let ln_l = ln_p + j as f64 * ln_r;
        let l = ln_l.exp();
        let term = -l * ln_l;
        sum += term;
        if l < 1e-300 || (j > 10 && term.abs() < 1e-18 * sum.abs()) {
            break;
        }
        j += 1;
        if j > 100_000_000 {
            return Err(Error::Numerical("spectrum series did not converge".into()));
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{oscillator_entropy_expansion, MomentPair};
    use crate::oracle::gaussian_entropy;

    fn kernel_with_ratio(a_over_b: f64) -> GaussianKernel {
        GaussianKernel::normalized(a_over_b, 1.0).unwrap()
    }

    #[test]
    fn direct_is_normalized() {
        for &r in &[1.5, 4.0, 100.0, 1e6] {
            let t = trace_power(&kernel_with_ratio(r), 1).unwrap();
            assert!((t.direct - 1.0).abs() < 1e-13);
            assert!((t.geometric - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn geometric_form_is_exact() {
        for &r in &[1.01, 2.0, 100.0, 1e4] {
            let k = kernel_with_ratio(r);
            for n in 1..=64 {
                let t = trace_power(&k, n).unwrap();
                assert!(
                    ((t.direct - t.geometric) / t.direct).abs() < 1e-11,
                    "a/b={r} n={n}: {} vs {}",
                    t.direct,
                    t.geometric
                );
            }
        }
    }

    #[test]
    fn closed_form_gap_at_a_over_b_100() {
        // ε = √(4b/a) = 0.2; the ε̃ form carries an O(ε) error, frozen here
        let t1 = trace_power(&kernel_with_ratio(100.0), 1).unwrap();
        let t2 = trace_power(&kernel_with_ratio(100.0), 2).unwrap();
        assert!((t1.closed_form - 0.8989331499509895).abs() < 1e-13);
        assert!((t2.direct - 0.1).abs() < 1e-14);
        assert!((t2.closed_form - 0.08978675645342317).abs() < 1e-13);
    }

    #[test]
    fn closed_form_converges_as_eps_vanishes() {
        let t = trace_power(&kernel_with_ratio(4e8), 3).unwrap();
        assert!(((t.closed_form - t.direct) / t.direct).abs() < 1e-3);
    }

    #[test]
    fn rejects_invalid_kernels() {
        let k = GaussianKernel {
            a: 1.0,
            b: 2.0,
            norm: KernelNorm::Normalized,
        };
        assert!(trace_power(&k, 2).is_err());
        assert!(trace_power(&GaussianKernel::ring(1.0, 10.0).unwrap(), 2).is_err());
    }

    #[test]
    fn series_reconstructs_closed_entropy() {
        for &eps in &[0.01, 0.1, 0.2, 0.5] {
            let p = eps_tilde(eps);
            let closed = geometric_spectrum_entropy(p, eps).unwrap();
            let series = spectrum_series_entropy(p, eps).unwrap();
            assert!((closed - series).abs() < 1e-8 * closed, "eps={eps}");
        }
    }

    #[test]
    fn exact_spectrum_gives_gaussian_entropy() {
        for &nu in &[0.6, 1.0, 10.0, 1e3] {
            let eps = 1.0 / (nu + 0.5);
            let s = geometric_spectrum_entropy(eps, eps).unwrap();
            assert!((s - gaussian_entropy(nu).unwrap()).abs() < 1e-12 * s.max(1.0));
        }
    }

    #[test]
    fn expansion_formula_lacks_one_minus_eps_factor() {
        // the series sums to -(ε̃/ε) ln ε̃ - ε̃(1-ε)/ε² ln(1-ε); the expansion
        // formula uses ε̃/ε² in the second term
        let eps: f64 = 0.1;
        let m = MomentPair::new(1.0, 1.0 / (eps * eps)).unwrap();
        let expansion = oscillator_entropy_expansion(&m).unwrap();
        let series = spectrum_series_entropy(eps_tilde(eps), eps).unwrap();
        let et = eps_tilde(eps);
        let diff = expansion - series;
        assert!((diff + et / eps * (-eps).ln_1p()).abs() < 1e-10);
    }
}
