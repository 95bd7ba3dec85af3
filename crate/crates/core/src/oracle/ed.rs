//! Exact diagonalisation of a few-mode spin-boson Hamiltonian in a
//! truncated Fock basis:
//! `H = (Δ₀/2) σx + Σ ω_k b_k†b_k + σz Σ (λ_k/2)(b_k + b_k†)`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::numerics::xlogx;
use crate::oracle::DiscreteBath;
use crate::spin_boson::ReducedSpinState;

pub const MAX_ED_MODES: usize = 4;
pub const MAX_FOCK_CUT: usize = 8;
pub const MAX_ED_DIM: usize = 1 << 14;
/// Largest Hilbert-space dimension diagonalised densely; Lanczos above.
pub const DENSE_LIMIT: usize = 1024;

const LANCZOS_MAX_ITER: usize = 600;
const LANCZOS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdResult {
    pub state: ReducedSpinState,
    /// Signed `⟨σx⟩` of the ground state; negative for `Δ₀ > 0`.
    pub sx_signed: f64,
    pub sz: f64,
    pub rho_eigenvalues: [f64; 2],
    pub rho_trace: f64,
    pub ground_energy: f64,
    pub dim: usize,
    /// `|⟨σx⟩(fock_cut) - ⟨σx⟩(fock_cut - 1)|`, when `fock_cut ≥ 3`.
    pub truncation_shift: Option<f64>,
}

struct Model<'a> {
    delta0: f64,
    bath: &'a DiscreteBath,
    cut: usize,
    boson_dim: usize,
    strides: Vec<usize>,
}

impl<'a> Model<'a> {
    fn new(delta0: f64, bath: &'a DiscreteBath, cut: usize) -> Self {
        let strides: Vec<usize> = (0..bath.len()).map(|k| cut.pow(k as u32)).collect();
        Self {
            delta0,
            bath,
            cut,
            boson_dim: cut.pow(bath.len() as u32),
            strides,
        }
    }

    fn dim(&self) -> usize {
        2 * self.boson_dim
    }

    fn occupation(&self, b: usize, k: usize) -> usize {
        (b / self.strides[k]) % self.cut
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let bd = self.boson_dim;
        for spin in 0..2 {
            let sign = if spin == 0 { 1.0 } else { -1.0 };
            for b in 0..bd {
                let i = spin * bd + b;
                let mut acc = 0.5 * self.delta0 * x[(1 - spin) * bd + b];
                for (k, m) in self.bath.modes.iter().enumerate() {
                    let n = self.occupation(b, k);
                    acc += m.omega * n as f64 * x[i];
                    let g = 0.5 * sign * m.lambda;
                    if n + 1 < self.cut {
                        acc += g * ((n + 1) as f64).sqrt() * x[i + self.strides[k]];
                    }
                    if n > 0 {
                        acc += g * (n as f64).sqrt() * x[i - self.strides[k]];
                    }
                }
                y[i] = acc;
            }
        }
    }

    /// Ground state of the uncoupled spin, `|σx = -1⟩ ⊗ |0⟩`.
    fn seed(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        v[0] = std::f64::consts::FRAC_1_SQRT_2;
        v[self.boson_dim] = -std::f64::consts::FRAC_1_SQRT_2;
        v
    }
}

fn dense_ground_state(model: &Model) -> (f64, Vec<f64>) {
    let n = model.dim();
    let mut h = DMatrix::<f64>::zeros(n, n);
    let mut e = vec![0.0; n];
    let mut col = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        model.apply(&e, &mut col);
        for i in 0..n {
            h[(i, j)] = col[i];
        }
        e[j] = 0.0;
    }
    let eig = SymmetricEigen::new(h);
    let (jmin, &emin) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty spectrum");
    (emin, eig.eigenvectors.column(jmin).iter().cloned().collect())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lanczos with full reorthogonalisation, seeded in the symmetry sector of
/// the uncoupled ground state.
fn lanczos_ground_state(model: &Model) -> Result<(f64, Vec<f64>)> {
    let n = model.dim();
    let max_iter = LANCZOS_MAX_ITER.min(n);
    let mut basis: Vec<Vec<f64>> = vec![model.seed()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let mut last_energy = f64::INFINITY;

    for j in 0..max_iter {
        model.apply(&basis[j], &mut w);
        let a = dot(&w, &basis[j]);
        alphas.push(a);
        for v in &basis {
            let c = dot(&w, v);
            w.iter_mut().zip(v).for_each(|(wi, vi)| *wi -= c * vi);
        }
        let beta = dot(&w, &w).sqrt();

        let m = alphas.len();
        let check = m % 10 == 0 || beta < 1e-14 || m == max_iter;
        if check {
            let mut t = DMatrix::<f64>::zeros(m, m);
            for i in 0..m {
                t[(i, i)] = alphas[i];
                if i + 1 < m {
                    t[(i, i + 1)] = betas[i];
                    t[(i + 1, i)] = betas[i];
                }
            }
            let eig = SymmetricEigen::new(t);
            let (jmin, &emin) = eig
                .eigenvalues
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("non-empty");
            let y = eig.eigenvectors.column(jmin);
            let residual = beta * y[m - 1].abs();
            let scale = emin.abs().max(1.0);
            if residual < LANCZOS_TOL * scale
                || beta < 1e-14
                || (emin - last_energy).abs() < 1e-15 * scale && residual < 1e-8 * scale
            {
                let mut psi = vec![0.0; n];
                for (coef, v) in y.iter().zip(&basis) {
                    psi.iter_mut().zip(v).for_each(|(p, vi)| *p += coef * vi);
                }
                let norm = dot(&psi, &psi).sqrt();
                psi.iter_mut().for_each(|p| *p /= norm);
                return Ok((emin, psi));
            }
            last_energy = emin;
        }
        if m == max_iter {
            break;
        }
        betas.push(beta);
        basis.push(w.iter().map(|x| x / beta).collect());
    }
    Err(Error::Numerical(format!(
        "Lanczos did not converge in {max_iter} iterations (dimension {n})"
    )))
}

fn reduced_spin(model: &Model, psi: &[f64]) -> (f64, f64) {
    let bd = model.boson_dim;
    let (up, down) = psi.split_at(bd);
    let sz = dot(up, up) - dot(down, down);
    let sx = 2.0 * dot(up, down);
    (sx, sz)
}

fn solve(delta0: f64, bath: &DiscreteBath, cut: usize) -> Result<(f64, f64, f64)> {
    let model = Model::new(delta0, bath, cut);
    let (e, psi) = if model.dim() <= DENSE_LIMIT {
        dense_ground_state(&model)
    } else {
        lanczos_ground_state(&model)?
    };
    let (sx, sz) = reduced_spin(&model, &psi);
    Ok((e, sx, sz))
}

/// Ground-state reduced spin state of the truncated model.
pub fn spin_boson_ed(delta0: f64, bath: &DiscreteBath, fock_cut: usize) -> Result<EdResult> {
    if !(delta0 > 0.0 && delta0.is_finite()) {
        return Err(Error::domain("delta0", delta0, "tunneling must be positive"));
    }
    if bath.len() > MAX_ED_MODES {
        return Err(Error::config(
            "n_modes",
            format!("at most {MAX_ED_MODES} modes, got {}", bath.len()),
        ));
    }
    if !(2..=MAX_FOCK_CUT).contains(&fock_cut) {
        return Err(Error::config(
            "fock_cut",
            format!("must lie in 2..={MAX_FOCK_CUT}, got {fock_cut}"),
        ));
    }
    let dim = 2 * fock_cut.pow(bath.len() as u32);
    if dim > MAX_ED_DIM {
        return Err(Error::config(
            "fock_cut",
            format!("dimension {dim} exceeds {MAX_ED_DIM}"),
        ));
    }

    let (energy, sx, sz) = solve(delta0, bath, fock_cut)?;
    let truncation_shift = if fock_cut >= 3 {
        let (_, sx_lower, _) = solve(delta0, bath, fock_cut - 1)?;
        Some((sx - sx_lower).abs())
    } else {
        None
    };

    // ρ = ½(1 + ⟨σx⟩σx + ⟨σz⟩σz); σy vanishes for a real Hamiltonian
    let r = (sx * sx + sz * sz).sqrt();
    let eigs = [0.5 * (1.0 - r), 0.5 * (1.0 + r)];
    let entropy = -(xlogx(eigs[0].max(0.0)) + xlogx(eigs[1]));
    Ok(EdResult {
        state: ReducedSpinState {
            sx: sx.abs().min(1.0),
            sz,
            entropy,
        },
        sx_signed: sx,
        sz,
        rho_eigenvalues: eigs,
        rho_trace: eigs[0] + eigs[1],
        ground_energy: energy,
        dim,
        truncation_shift,
    })
}
