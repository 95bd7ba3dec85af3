use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qdiss::gaussian::EntropyMethod;
use qdiss::oracle::Scheme;
use qdiss::spin_boson::{SigmaXConvention, SigmaXRoute};
use qdiss::sweep::{
    detect_kink, oracle_run, preset, preset_descriptions, regime_map, render_comparisons,
    render_kink, render_regime_map, render_table, run_sweep, Column, FixedParams, Format, Grid,
    Model, OracleKnobs, Preset, RegimeMapConfig, SweepConfig,
};
use qdiss::{Error, Result};

#[derive(Parser)]
#[command(name = "qdiss", version, about = "Entanglement entropy of dissipative quantum systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate the entropy and related columns against the coupling.
    Sweep(SweepArgs),
    /// Run a sweep and locate a kink in one of its columns.
    Kink(KinkArgs),
    /// Classify sub-Ohmic spin-boson points on a (delta0/lambda0, alpha) grid.
    RegimeMap(MapArgs),
    /// Compare closed forms against brute-force references at one point.
    Oracle(OracleArgs),
    /// Run or list the built-in configurations.
    Preset(PresetArgs),
}

#[derive(Args, Default)]
struct FixedArgs {
    #[arg(long)]
    omega0: Option<f64>,
    #[arg(long)]
    omega_c: Option<f64>,
    #[arg(long)]
    delta0: Option<f64>,
    #[arg(long)]
    lambda0: Option<f64>,
    /// Bath exponent.
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    temperature: Option<f64>,
    /// Free-particle regulator length.
    #[arg(long)]
    length: Option<f64>,
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long)]
    scaling_constant: Option<f64>,
}

impl FixedArgs {
    fn apply(&self, f: &mut FixedParams) {
        let set = |dst: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *dst = v;
            }
        };
        set(&mut f.omega0, self.omega0);
        set(&mut f.omega_c, self.omega_c);
        set(&mut f.delta0, self.delta0);
        set(&mut f.lambda0, self.lambda0);
        set(&mut f.s, self.s);
        set(&mut f.temperature, self.temperature);
        set(&mut f.scaling_constant, self.scaling_constant);
        if self.length.is_some() {
            f.length = self.length;
        }
        if let Some(d) = self.dim {
            f.dim = d;
        }
    }
}

#[derive(Args)]
struct OutArgs {
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON sweep configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// free-particle, oscillator or spin-boson.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long)]
    alpha_max: Option<f64>,
    #[arg(long)]
    alpha_points: Option<usize>,
    #[command(flatten)]
    fixed: FixedArgs,
    /// Comma-separated output columns.
    #[arg(long)]
    columns: Option<String>,
    /// Oscillator entropy: exact or expansion.
    #[arg(long)]
    entropy_method: Option<String>,
    /// Spin-boson free energy: closed-form or max-rule.
    #[arg(long)]
    route: Option<String>,
    /// free-energy or ground-energy.
    #[arg(long)]
    convention: Option<String>,
    /// Keep grid points that fall on branch points.
    #[arg(long)]
    include_branch_points: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct KinkArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Column to scan.
    #[arg(long, default_value = "S")]
    column: String,
    /// Peak second difference over the background median.
    #[arg(long, default_value_t = 5.0)]
    threshold: f64,
}

#[derive(Args)]
struct MapArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    ratio_min: Option<f64>,
    #[arg(long)]
    ratio_max: Option<f64>,
    #[arg(long)]
    ratio_points: Option<usize>,
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long)]
    alpha_max: Option<f64>,
    #[arg(long)]
    alpha_points: Option<usize>,
    /// Delta0/lambda0 below which the scaling limit is assumed.
    #[arg(long)]
    scaling_ratio: Option<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    alpha: Option<f64>,
    /// Friction, used when --alpha is absent.
    #[arg(long)]
    eta: Option<f64>,
    #[command(flatten)]
    fixed: FixedArgs,
    /// Discrete bath size for the oscillator.
    #[arg(long, default_value_t = 400)]
    n_modes: usize,
    /// linear or logarithmic bath discretisation.
    #[arg(long, default_value = "logarithmic")]
    scheme: String,
    /// Largest ring momentum for the free particle.
    #[arg(long)]
    n_max: Option<usize>,
    /// Spin-boson: check the entropy at this sigma_x.
    #[arg(long)]
    sigma_x: Option<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct PresetArgs {
    name: Option<String>,
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    out: OutArgs,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config("config", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::config("config", format!("{}: {e}", path.display())))
}

fn parse_kebab<T: serde::de::DeserializeOwned>(field: &str, v: &str) -> Result<T> {
    serde_json::from_value(serde_json::Value::String(v.to_string()))
        .map_err(|_| Error::config(field, format!("unknown value `{v}`")))
}

fn sweep_config(a: &SweepArgs) -> Result<SweepConfig> {
    let mut cfg = match &a.config {
        Some(p) => read_json::<SweepConfig>(p)?,
        None => {
            let model: Model = a
                .model
                .as_deref()
                .ok_or_else(|| Error::config("model", "give --model or --config"))?
                .parse()?;
            let grid = match (a.alpha_min, a.alpha_max, a.alpha_points) {
                (Some(lo), Some(hi), Some(n)) => Grid {
                    alpha_min: lo,
                    alpha_max: hi,
                    n_points: n,
                },
                _ => {
                    return Err(Error::config(
                        "grid",
                        "give --alpha-min, --alpha-max and --alpha-points or --config",
                    ))
                }
            };
            SweepConfig::new(model, grid)
        }
    };
    if let Some(m) = &a.model {
        cfg.model = m.parse()?;
    }
    if let Some(v) = a.alpha_min {
        cfg.grid.alpha_min = v;
    }
    if let Some(v) = a.alpha_max {
        cfg.grid.alpha_max = v;
    }
    if let Some(v) = a.alpha_points {
        cfg.grid.n_points = v;
    }
    a.fixed.apply(&mut cfg.fixed);
    if let Some(cols) = &a.columns {
        cfg.outputs = cols
            .split(',')
            .map(|c| c.trim().parse::<Column>())
            .collect::<Result<_>>()?;
    }
    if let Some(m) = &a.entropy_method {
        cfg.entropy_method = parse_kebab::<EntropyMethod>("entropy_method", m)?;
    }
    if let Some(r) = &a.route {
        cfg.route = Some(parse_kebab::<SigmaXRoute>("route", r)?);
    }
    if let Some(c) = &a.convention {
        cfg.sigma_x_convention = parse_kebab::<SigmaXConvention>("sigma_x_convention", c)?;
    }
    if a.include_branch_points {
        cfg.include_branch_points = true;
    }
    if let Some(f) = &a.out.format {
        cfg.format = f.parse()?;
    }
    Ok(cfg)
}

fn map_config(a: &MapArgs) -> Result<RegimeMapConfig> {
    let mut cfg = match &a.config {
        Some(p) => read_json::<RegimeMapConfig>(p)?,
        None => RegimeMapConfig {
            s: 0.5,
            ratio_min: 1e-4,
            ratio_max: 0.5,
            ratio_points: 30,
            alpha_min: 0.0,
            alpha_max: 0.3,
            alpha_points: 31,
            scaling_ratio: qdiss::spin_boson::SCALING_LIMIT_RATIO,
            format: Format::Csv,
        },
    };
    macro_rules! set {
        ($($f:ident),*) => { $( if let Some(v) = a.$f { cfg.$f = v; } )* };
    }
    set!(s, ratio_min, ratio_max, ratio_points, alpha_min, alpha_max, alpha_points, scaling_ratio);
    if let Some(f) = &a.out.format {
        cfg.format = f.parse()?;
    }
    Ok(cfg)
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::config("output", format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::config("output", e.to_string()))
        }
    }
}

fn out_format(out: &OutArgs) -> Result<Format> {
    out.format.as_deref().map_or(Ok(Format::Csv), str::parse)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Sweep(a) => {
            let cfg = sweep_config(&a)?;
            let format = cfg.format;
            let table = run_sweep(cfg)?;
            emit(&a.out, &render_table(&table, format)?)
        }
        Cmd::Kink(k) => {
            let cfg = sweep_config(&k.sweep)?;
            let format = cfg.format;
            let column: Column = k.column.parse()?;
            if !cfg.outputs.is_empty() && !cfg.outputs.contains(&column) {
                return Err(Error::config("column", format!("`{}` is not among the outputs", k.column)));
            }
            let mut cfg = cfg;
            if cfg.outputs.is_empty() {
                cfg.outputs = vec![column];
            }
            let table = run_sweep(cfg)?;
            let kink = detect_kink(&table, column, k.threshold)?;
            emit(&k.sweep.out, &render_kink(column.name(), kink.as_ref(), format))
        }
        Cmd::RegimeMap(a) => {
            let cfg = map_config(&a)?;
            let map = regime_map(&cfg)?;
            emit(&a.out, &render_regime_map(&map, cfg.format)?)
        }
        Cmd::Oracle(a) => {
            let model: Model = a.model.parse()?;
            let mut fixed = FixedParams::default();
            a.fixed.apply(&mut fixed);
            let knobs = OracleKnobs {
                alpha: a.alpha,
                eta: a.eta,
                n_modes: a.n_modes,
                scheme: a.scheme.parse::<Scheme>()?,
                n_max: a.n_max,
                sigma_x: a.sigma_x,
            };
            let rows = oracle_run(model, &fixed, &knobs)?;
            emit(&a.out, &render_comparisons(&rows, out_format(&a.out)?))
        }
        Cmd::Preset(a) => {
            if a.list || a.name.is_none() {
                let mut text = String::new();
                for (name, desc) in preset_descriptions() {
                    text.push_str(&format!("{name}\t{desc}\n"));
                }
                return emit(&a.out, &text);
            }
            let name = a.name.as_deref().expect("checked above");
            match preset(name)? {
                Preset::Sweep(mut cfg) => {
                    if let Some(f) = &a.out.format {
                        cfg.format = f.parse()?;
                    }
                    let format = cfg.format;
                    let table = run_sweep(cfg)?;
                    emit(&a.out, &render_table(&table, format)?)
                }
                Preset::RegimeMap(mut cfg) => {
                    if let Some(f) = &a.out.format {
                        cfg.format = f.parse()?;
                    }
                    let map = regime_map(&cfg)?;
                    emit(&a.out, &render_regime_map(&map, cfg.format)?)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
