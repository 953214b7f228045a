//! Argument parsing and command dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fdcran_core::association::{Design, Scheme};
use fdcran_core::montecarlo::Combo;
use fdcran_core::SystemConfig;

use crate::config_io::load_config;
use crate::error::{AppError, AppResult};
use crate::experiments::{default_phi_grid, phi_sweep, rate_region, single, SweepAxis};
use crate::manifest::RunManifest;
use crate::output::{write_rates, write_validation, RateUnit};
use crate::validation::{validate, ToleranceOverride};

#[derive(Debug, Parser)]
#[command(name = "fdcran", version, about = "Rate evaluation for a full-duplex C-RAN with Poisson-distributed RRHs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// JSON configuration file; omitted fields take their defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output CSV path (stdout when omitted). A manifest is written next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Override the number of Monte Carlo trials.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Override the RNG seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Report rates in bits instead of nats.
    #[arg(long, global = true)]
    pub bits: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Ara,
    Sra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DesignArg {
    #[value(name = "MRC_MRT", alias = "mrc-mrt", alias = "mrc_mrt")]
    MrcMrt,
    #[value(name = "ZF_MRT", alias = "zf-mrt", alias = "zf_mrt")]
    ZfMrt,
    #[value(name = "OPTIMAL", alias = "optimal")]
    Optimal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate UL/DL rates for one scheme and design.
    Single {
        #[arg(long, value_enum, ignore_case = true)]
        scheme: SchemeArg,
        #[arg(long, value_enum, ignore_case = true)]
        design: DesignArg,
    },
    /// Sweep p_d over [0, 1] for every scheme, design and duplex mode.
    RateRegion {
        #[arg(long, default_value_t = 21)]
        points: usize,
    },
    /// Sweep the interference-region half-angle for the SRA designs.
    PhiSweep {
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Compare every analytic expression with a matched Monte Carlo estimate.
    Validate {
        /// Relative tolerance applied to every comparison (defaults per expression).
        #[arg(long)]
        tolerance: Option<f64>,
        /// Width of the statistical band in standard errors (default 3).
        #[arg(long)]
        sigmas: Option<f64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Single { .. } => "single",
            Command::RateRegion { .. } => "rate-region",
            Command::PhiSweep { .. } => "phi-sweep",
            Command::Validate { .. } => "validate",
        }
    }
}

fn resolve_config(g: &GlobalArgs) -> AppResult<SystemConfig> {
    let mut cfg = match &g.config {
        Some(p) => load_config(p)?,
        None => SystemConfig::default(),
    };
    if let Some(t) = g.trials {
        cfg.trials = t;
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(g: &GlobalArgs, mut manifest: RunManifest, write: impl FnOnce(&mut dyn Write) -> AppResult<()>) -> AppResult<()> {
    match &g.out {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            write(&mut file)?;
            file.flush()?;
            manifest.finish(&[path.as_path()]);
            manifest.write(&RunManifest::path_for(path))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn combo(scheme: SchemeArg, design: DesignArg) -> Combo {
    let scheme = match scheme {
        SchemeArg::Ara => Scheme::Ara,
        SchemeArg::Sra => Scheme::Sra,
    };
    let design = match design {
        DesignArg::MrcMrt => Design::MrcMrt,
        DesignArg::ZfMrt => Design::ZfMrt,
        DesignArg::Optimal => Design::Optimal,
    };
    Combo::full(scheme, design)
}

/// Executes a parsed command line; summaries go to stderr when CSV goes to stdout.
pub fn run(cli: Cli) -> AppResult<()> {
    let g = &cli.global;
    let cfg = resolve_config(g)?;
    let unit = if g.bits { RateUnit::Bits } else { RateUnit::Nats };
    let manifest = RunManifest::start(cli.command.name(), &cfg);
    let summary = |line: String| {
        if g.out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    };
    match cli.command {
        Command::Single { scheme, design } => {
            let c = combo(scheme, design);
            c.validate()?;
            let row = single(&cfg, c)?;
            let unit_name = if g.bits { "bits" } else { "nats" };
            let k = if g.bits { 1.0 / std::f64::consts::LN_2 } else { 1.0 };
            summary(format!(
                "{scheme:?}/{design:?}: UL {:.6} ± {:.6}, DL {:.6} ± {:.6}, sum {:.6} ± {:.6} {unit_name} over {} trials",
                row.estimate.ul.mean * k,
                row.estimate.ul.std_error * k,
                row.estimate.dl.mean * k,
                row.estimate.dl.std_error * k,
                row.estimate.sum.mean * k,
                row.estimate.sum.std_error * k,
                row.estimate.sum.trials
            ));
            emit(g, manifest, |w| write_rates(w, SweepAxis::PD, &[row], unit))
        }
        Command::RateRegion { points } => {
            if points == 0 {
                return Err(AppError::Config("`points` must be at least 1".into()));
            }
            let rows = rate_region(&cfg, points)?;
            summary(format!("rate region: {} rows", rows.len()));
            emit(g, manifest, |w| write_rates(w, SweepAxis::PD, &rows, unit))
        }
        Command::PhiSweep { from, to, steps } => {
            let grid = default_phi_grid();
            let (from, to, steps) = (from.unwrap_or(grid[0]), to.unwrap_or(*grid.last().unwrap()), steps.unwrap_or(grid.len()));
            for (field, v) in [("from", from), ("to", to)] {
                if !(0.0..=std::f64::consts::PI).contains(&v) {
                    return Err(AppError::Config(format!("`{field}` must lie in [0, pi]")));
                }
            }
            if steps == 0 {
                return Err(AppError::Config("`steps` must be at least 1".into()));
            }
            let rows = phi_sweep(&cfg, from, to, steps)?;
            summary(format!("phi sweep: {} rows", rows.len()));
            emit(g, manifest, |w| write_rates(w, SweepAxis::Phi, &rows, unit))
        }
        Command::Validate { tolerance, sigmas } => {
            for (field, v) in [("tolerance", tolerance), ("sigmas", sigmas)] {
                if v.is_some_and(|x| x.is_nan() || x < 0.0) {
                    return Err(AppError::Config(format!("`{field}` must be >= 0")));
                }
            }
            let rows = validate(&cfg, ToleranceOverride { rel: tolerance, sigmas })?;
            for r in &rows {
                summary(format!(
                    "{:<10} analytic {:.6e}  mc {:.6e} ± {:.2e}  {}",
                    r.formula_id.as_str(),
                    r.analytic_value,
                    r.mc_value,
                    r.mc_std_error,
                    r.verdict()
                ));
            }
            emit(g, manifest, |w| write_validation(w, &rows, unit))?;
            let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.formula_id.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(AppError::ValidationFailed(failed.join(", ")))
            }
        }
    }
}

/// Path-free helper for tests: parse `args` and run.
pub fn run_args<I, T>(args: I) -> AppResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| AppError::Config(e.to_string()))?;
    run(cli)
}

