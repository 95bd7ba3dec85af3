use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::EntropyMethod;
use crate::spin_boson::{SigmaXConvention, SigmaXRoute, SCALING_LIMIT_RATIO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    FreeParticle,
    Oscillator,
    SpinBoson,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::FreeParticle => "free-particle",
            Model::Oscillator => "oscillator",
            Model::SpinBoson => "spin-boson",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free-particle" => Ok(Model::FreeParticle),
            "oscillator" => Ok(Model::Oscillator),
            "spin-boson" => Ok(Model::SpinBoson),
            other => Err(Error::config("model", format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Column {
    #[serde(rename = "S")]
    Entropy,
    #[serde(rename = "dS")]
    EntropyD1,
    #[serde(rename = "d2S")]
    EntropyD2,
    #[serde(rename = "sigma_x")]
    SigmaX,
    #[serde(rename = "delta_ren")]
    DeltaRen,
    #[serde(rename = "regime")]
    Regime,
    #[serde(rename = "nu")]
    Nu,
    #[serde(rename = "S_expansion")]
    EntropyExpansion,
}

impl Column {
    pub const ALL: [Column; 8] = [
        Column::Entropy,
        Column::EntropyD1,
        Column::EntropyD2,
        Column::SigmaX,
        Column::DeltaRen,
        Column::Regime,
        Column::Nu,
        Column::EntropyExpansion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::Entropy => "S",
            Column::EntropyD1 => "dS",
            Column::EntropyD2 => "d2S",
            Column::SigmaX => "sigma_x",
            Column::DeltaRen => "delta_ren",
            Column::Regime => "regime",
            Column::Nu => "nu",
            Column::EntropyExpansion => "S_expansion",
        }
    }

    fn supported_by(self, model: Model) -> bool {
        match self {
            Column::Entropy | Column::EntropyD1 | Column::EntropyD2 => true,
            Column::SigmaX | Column::DeltaRen => model == Model::SpinBoson,
            Column::Nu | Column::EntropyExpansion => model == Model::Oscillator,
            Column::Regime => model != Model::FreeParticle,
        }
    }

    fn defaults(model: Model) -> Vec<Column> {
        use Column::*;
        match model {
            Model::FreeParticle => vec![Entropy, EntropyD1, EntropyD2],
            Model::Oscillator => vec![Entropy, EntropyD1, EntropyD2, Nu, EntropyExpansion, Regime],
            Model::SpinBoson => vec![Entropy, EntropyD1, EntropyD2, SigmaX, DeltaRen, Regime],
        }
    }
}

impl std::str::FromStr for Column {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Column::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::config("outputs", format!("unknown column `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::config("format", format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub n_points: usize,
}

/// Model parameters held fixed along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FixedParams {
    pub omega0: f64,
    pub omega_c: f64,
    pub delta0: f64,
    pub lambda0: f64,
    pub s: f64,
    pub temperature: f64,
    /// Free-particle regulator; has no default.
    pub length: Option<f64>,
    pub dim: u32,
    pub scaling_constant: f64,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            omega0: 1.0,
            omega_c: 100.0,
            delta0: 0.01,
            lambda0: 1.0,
            s: 1.0,
            temperature: 0.0,
            length: None,
            dim: 1,
            scaling_constant: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: Model,
    pub grid: Grid,
    #[serde(default)]
    pub fixed: FixedParams,
    /// Empty means the model's default column set.
    #[serde(default)]
    pub outputs: Vec<Column>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub include_branch_points: bool,
    #[serde(default)]
    pub entropy_method: EntropyMethod,
    #[serde(default)]
    pub sigma_x_convention: SigmaXConvention,
    #[serde(default)]
    pub route: Option<SigmaXRoute>,
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(field, format!("must be positive, got {v}")))
    }
}

impl SweepConfig {
    pub fn new(model: Model, grid: Grid) -> Self {
        Self {
            model,
            grid,
            fixed: FixedParams::default(),
            outputs: Vec::new(),
            format: Format::default(),
            include_branch_points: false,
            entropy_method: EntropyMethod::default(),
            sigma_x_convention: SigmaXConvention::default(),
            route: None,
        }
    }

    /// Checks the configuration and fills in the default column set.
    pub fn resolved(mut self) -> Result<Self> {
        let g = &self.grid;
        if !(g.alpha_min.is_finite() && g.alpha_max.is_finite()) {
            return Err(Error::config("grid", "alpha bounds must be finite"));
        }
        if !(g.alpha_min < g.alpha_max) {
            return Err(Error::config(
                "grid.alpha_min",
                format!("must be below alpha_max ({} >= {})", g.alpha_min, g.alpha_max),
            ));
        }
        if g.n_points < 3 {
            return Err(Error::config(
                "grid.n_points",
                format!("need at least 3 points, got {}", g.n_points),
            ));
        }
        if g.alpha_min < 0.0 {
            return Err(Error::config("grid.alpha_min", "coupling must be non-negative"));
        }
        let f = &self.fixed;
        match self.model {
            Model::FreeParticle => {
                if g.alpha_min <= 0.0 {
                    return Err(Error::config(
                        "grid.alpha_min",
                        "free-particle friction must be positive",
                    ));
                }
                positive("fixed.omega0", f.omega0)?;
                positive("fixed.omega_c", f.omega_c)?;
                match f.length {
                    Some(l) => positive("fixed.length", l)?,
                    None => {
                        return Err(Error::config(
                            "fixed.length",
                            "the free particle needs an explicit regulator length",
                        ))
                    }
                }
                if f.dim == 0 {
                    return Err(Error::config("fixed.dim", "must be at least 1"));
                }
            }
            Model::Oscillator => {
                positive("fixed.omega0", f.omega0)?;
                positive("fixed.omega_c", f.omega_c)?;
                if f.omega_c <= f.omega0 {
                    return Err(Error::config("fixed.omega_c", "must exceed omega0"));
                }
            }
            Model::SpinBoson => {
                positive("fixed.delta0", f.delta0)?;
                positive("fixed.lambda0", f.lambda0)?;
                positive("fixed.s", f.s)?;
                positive("fixed.scaling_constant", f.scaling_constant)?;
                if f.delta0 >= f.lambda0 {
                    return Err(Error::config("fixed.delta0", "must lie below lambda0"));
                }
                if !(f.temperature >= 0.0) {
                    return Err(Error::config("fixed.temperature", "must be non-negative"));
                }
                if f.temperature > 0.0 {
                    return Err(Error::config(
                        "fixed.temperature",
                        "sweeps evaluate the zero-temperature ground state",
                    ));
                }
                if self.route == Some(SigmaXRoute::ClosedForm) && f.s != 1.0 {
                    return Err(Error::config("route", "the closed form needs s = 1"));
                }
            }
        }
        if self.outputs.is_empty() {
            self.outputs = Column::defaults(self.model);
        }
        for c in &self.outputs {
            if !c.supported_by(self.model) {
                return Err(Error::config(
                    "outputs",
                    format!("column `{}` is not available for {}", c.name(), self.model.as_str()),
                ));
            }
        }
        Ok(self)
    }

    /// Coupling values where the closed forms switch branch.
    pub fn branch_points(&self) -> Vec<f64> {
        match self.model {
            Model::Oscillator => vec![1.0 / std::f64::consts::PI],
            Model::SpinBoson if self.fixed.s == 1.0 => vec![0.5, 1.0],
            _ => Vec::new(),
        }
    }
}

/// Two-dimensional sub-Ohmic regime map over `Δ₀/Λ₀` (log-spaced) and `α`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeMapConfig {
    pub s: f64,
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub ratio_points: usize,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_points: usize,
    #[serde(default = "default_scaling_ratio")]
    pub scaling_ratio: f64,
    #[serde(default)]
    pub format: Format,
}

fn default_scaling_ratio() -> f64 {
    SCALING_LIMIT_RATIO
}

impl RegimeMapConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.0 && self.s < 1.0) {
            return Err(Error::config("s", "the regime map needs 0 < s < 1"));
        }
        if !(self.ratio_min > 0.0 && self.ratio_min < self.ratio_max && self.ratio_max < 1.0) {
            return Err(Error::config("ratio_min", "need 0 < ratio_min < ratio_max < 1"));
        }
        if !(self.alpha_min >= 0.0 && self.alpha_min < self.alpha_max) {
            return Err(Error::config("alpha_min", "need 0 <= alpha_min < alpha_max"));
        }
        if self.ratio_points < 2 || self.alpha_points < 2 {
            return Err(Error::config("ratio_points", "need at least 2 points per axis"));
        }
        positive("scaling_ratio", self.scaling_ratio)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> Grid {
        Grid {
            alpha_min: 0.0,
            alpha_max: 1.0,
            n_points: n,
        }
    }

    #[test]
    fn rejects_degenerate_grids() {
        let cfg = SweepConfig::new(Model::Oscillator, grid(0));
        assert!(matches!(cfg.resolved(), Err(Error::Config { field, .. }) if field == "grid.n_points"));
        let mut cfg = SweepConfig::new(Model::Oscillator, grid(10));
        cfg.grid.alpha_max = 0.0;
        assert!(cfg.resolved().is_err());
    }

    #[test]
    fn names_offending_field() {
        let cfg = SweepConfig::new(Model::FreeParticle, Grid { alpha_min: 0.1, ..grid(10) });
        assert!(matches!(cfg.resolved(), Err(Error::Config { field, .. }) if field == "fixed.length"));
        let mut cfg = SweepConfig::new(Model::Oscillator, grid(10));
        cfg.outputs = vec![Column::SigmaX];
        assert!(matches!(cfg.resolved(), Err(Error::Config { field, .. }) if field == "outputs"));
    }

    #[test]
    fn json_round_trip() {
        let cfg = SweepConfig::new(Model::SpinBoson, grid(10)).resolved().unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: SweepConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn minimal_json_uses_defaults() {
        let cfg: SweepConfig = serde_json::from_str(
            r#"{"model": "spin-boson", "grid": {"alpha_min": 0, "alpha_max": 1, "n_points": 5}}"#,
        )
        .unwrap();
        assert_eq!(cfg.fixed, FixedParams::default());
        assert_eq!(cfg.format, Format::Csv);
    }
}
