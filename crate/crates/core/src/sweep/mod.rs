//! Parameter sweeps over the coupling, kink detection, the sub-Ohmic regime
//! map and closed-form-versus-oracle reports.

mod config;
mod kink;
mod oracle_run;
mod output;
mod preset;
mod regime_map;

pub use config::{Column, FixedParams, Format, Grid, Model, RegimeMapConfig, SweepConfig};
pub use kink::{detect_kink, detect_kink_in, KinkReport, MIN_KINK_POINTS};
pub use oracle_run::{oracle_run, Comparison, OracleKnobs};
pub use output::{format_number, render_comparisons, render_kink, render_regime_map, render_table};
pub use preset::{preset, preset_descriptions, Preset, PRESETS};
pub use regime_map::{regime_map, RegimeCell, RegimeMap};

use rayon::prelude::*;

use crate::bath::BathSpec;
use crate::error::{Error, Result};
use crate::gaussian::{
    free_particle_entropy, oscillator_entropy, oscillator_entropy_expansion, oscillator_moments,
    FreeParticleParams, OscillatorParams,
};
use crate::spin_boson::{
    delta_ren, max_rule, sigma_x_with, spin_entropy, subohmic_regime, MaxRuleBranch,
    SigmaXOptions, SpinBosonPoint, SubOhmicRegime,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Num(f64),
    Label(&'static str),
}

impl Value {
    pub fn as_f64(self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(x),
            Value::Label(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    /// Resolved configuration, defaults filled in.
    pub config: SweepConfig,
    /// Offset applied to the linspace grid to step off branch points.
    pub grid_shift: f64,
    pub alpha: Vec<f64>,
    pub columns: Vec<Column>,
    /// One vector per entry of `columns`, in grid order.
    pub data: Vec<Vec<Value>>,
}

impl SweepTable {
    pub fn column(&self, c: Column) -> Option<&[Value]> {
        self.columns
            .iter()
            .position(|&x| x == c)
            .map(|i| self.data[i].as_slice())
    }

    pub fn numeric(&self, c: Column) -> Result<Vec<f64>> {
        let col = self
            .column(c)
            .ok_or_else(|| Error::config("column", format!("`{}` is not in the table", c.name())))?;
        col.iter()
            .map(|v| {
                v.as_f64()
                    .ok_or_else(|| Error::config("column", format!("`{}` is not numeric", c.name())))
            })
            .collect()
    }
}

pub fn grid_step(g: &Grid) -> f64 {
    (g.alpha_max - g.alpha_min) / (g.n_points - 1) as f64
}

/// Grid points after the branch-point nudge, and the shift applied.
pub fn sweep_grid(cfg: &SweepConfig) -> (Vec<f64>, f64) {
    let g = cfg.grid;
    let h = grid_step(&g);
    let base: Vec<f64> = (0..g.n_points)
        .map(|i| g.alpha_min + i as f64 * h)
        .collect();
    let hits = !cfg.include_branch_points
        && cfg
            .branch_points()
            .iter()
            .any(|&b| base.iter().any(|&a| (a - b).abs() <= 1e-6 * h));
    if hits {
        let shift = 0.5 * h;
        (base.into_iter().map(|a| a + shift).collect(), shift)
    } else {
        (base, 0.0)
    }
}

#[derive(Debug, Clone, Copy)]
struct PointValues {
    s: f64,
    sigma_x: f64,
    delta_ren: f64,
    regime: &'static str,
    nu: f64,
    s_expansion: f64,
}

impl Default for PointValues {
    fn default() -> Self {
        Self {
            s: f64::NAN,
            sigma_x: f64::NAN,
            delta_ren: f64::NAN,
            regime: "",
            nu: f64::NAN,
            s_expansion: f64::NAN,
        }
    }
}

fn oscillator_label(kappa: f64) -> &'static str {
    if kappa < 1.0 {
        "underdamped"
    } else if kappa > 1.0 {
        "overdamped"
    } else {
        "critical"
    }
}

fn spin_boson_label(point: &SpinBosonPoint) -> Result<&'static str> {
    let s = point.bath.s;
    let a = point.alpha();
    Ok(if s < 1.0 {
        subohmic_regime(point)?.as_str()
    } else if s == 1.0 {
        if a < 0.5 {
            SubOhmicRegime::DelocalizedCoherent.as_str()
        } else if a < 1.0 {
            SubOhmicRegime::DelocalizedIncoherent.as_str()
        } else {
            SubOhmicRegime::Localized.as_str()
        }
    } else {
        match max_rule(point)?.branch {
            MaxRuleBranch::Renormalized => SubOhmicRegime::DelocalizedCoherent.as_str(),
            MaxRuleBranch::Perturbative => SubOhmicRegime::DelocalizedIncoherent.as_str(),
        }
    })
}

fn evaluate(cfg: &SweepConfig, alpha: f64) -> Result<PointValues> {
    let f = &cfg.fixed;
    let wants = |c: Column| cfg.outputs.contains(&c);
    let mut v = PointValues::default();
    match cfg.model {
        Model::FreeParticle => {
            let eta = 2.0 * std::f64::consts::PI * f.omega0 * alpha;
            let length = f.length.expect("validated");
            let p = FreeParticleParams::new(eta, f.omega_c, length, f.dim)?;
            v.s = free_particle_entropy(&p).entropy;
        }
        Model::Oscillator => {
            let p = OscillatorParams::from_alpha(f.omega0, alpha, f.omega_c)?;
            v.s = oscillator_entropy(&p, cfg.entropy_method)?;
            let m = oscillator_moments(&p)?;
            v.nu = m.nu();
            if wants(Column::EntropyExpansion) {
                v.s_expansion = oscillator_entropy_expansion(&m).unwrap_or(f64::NAN);
            }
            v.regime = oscillator_label(p.kappa());
        }
        Model::SpinBoson => {
            let bath = BathSpec::new(f.s, alpha, f.lambda0)?;
            let point = SpinBosonPoint::new(f.delta0, bath, f.temperature, f.scaling_constant)?;
            let opts = SigmaXOptions {
                convention: cfg.sigma_x_convention,
                route: cfg.route,
            };
            v.sigma_x = sigma_x_with(&point, opts)?;
            v.s = spin_entropy(v.sigma_x)?;
            if wants(Column::DeltaRen) {
                v.delta_ren = delta_ren(&point)?.value().unwrap_or(f64::NAN);
            }
            if wants(Column::Regime) {
                v.regime = spin_boson_label(&point)?;
            }
        }
    }
    Ok(v)
}

/// Evaluates every requested column on the grid. Points are computed in
/// parallel and reassembled in grid order, so the table does not depend on
/// the thread count.
pub fn run_sweep(cfg: SweepConfig) -> Result<SweepTable> {
    let cfg = cfg.resolved()?;
    let (alpha, grid_shift) = sweep_grid(&cfg);
    let points: Vec<Result<PointValues>> =
        alpha.par_iter().map(|&a| evaluate(&cfg, a)).collect();
    let points: Vec<PointValues> = points.into_iter().collect::<Result<_>>()?;

    let h = grid_step(&cfg.grid);
    let s: Vec<f64> = points.iter().map(|p| p.s).collect();
    let n = s.len();
    let stencil = |k: usize| -> Vec<Value> {
        (0..n)
            .map(|i| {
                if i == 0 || i + 1 == n {
                    return Value::Num(f64::NAN);
                }
                Value::Num(if k == 1 {
                    (s[i + 1] - s[i - 1]) / (2.0 * h)
                } else {
                    (s[i + 1] - 2.0 * s[i] + s[i - 1]) / (h * h)
                })
            })
            .collect()
    };

    let data = cfg
        .outputs
        .iter()
        .map(|c| match c {
            Column::Entropy => s.iter().map(|&x| Value::Num(x)).collect(),
            Column::EntropyD1 => stencil(1),
            Column::EntropyD2 => stencil(2),
            Column::SigmaX => points.iter().map(|p| Value::Num(p.sigma_x)).collect(),
            Column::DeltaRen => points.iter().map(|p| Value::Num(p.delta_ren)).collect(),
            Column::Regime => points.iter().map(|p| Value::Label(p.regime)).collect(),
            Column::Nu => points.iter().map(|p| Value::Num(p.nu)).collect(),
            Column::EntropyExpansion => points.iter().map(|p| Value::Num(p.s_expansion)).collect(),
        })
        .collect();

    Ok(SweepTable {
        columns: cfg.outputs.clone(),
        config: cfg,
        grid_shift,
        alpha,
        data,
    })
}
