//! `semiframe` — command-line front end for the semi-frame laboratory.
//!
//! Subcommands:
//!
//! * `analyze` — classify a gallery case or an external family, with frame
//!   bounds per refinement level and the five-statement lower-bound
//!   certificate;
//! * `transform` — sweep the inverse-power transform over a (k, m) grid
//!   and/or run the metric-transformability decision;
//! * `verify` — run the library's invariant suite (optionally with fault
//!   injection, which must fail);
//! * `gallery list` — print the case catalog with variants and flags.
//!
//! Inputs merge three layers (later wins): a `--config` TOML file, the
//! `SEMIFRAME_SEED` environment variable (seed only), then flags.  Every
//! command emits a JSON report (stdout, or `--out FILE`) plus optional CSV
//! sidecars (`--csv-dir DIR`); reports are byte-deterministic for a fixed
//! effective config except the timestamp field.
//!
//! Exit codes: 0 — ran, everything checked held; 1 — ran, an invariant or
//! prediction failed (the report names it); 2 — could not run (bad flags,
//! config, files, or hypotheses).

mod commands;
mod config;
mod error;
mod family;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;
use error::{CliError, Result};

#[derive(Parser)]
#[command(
    name = "semiframe",
    version,
    about = "Numerical laboratory for frames, semi-frames, and metric operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a family: verdict, bound trajectory, lower-bound certificate
    Analyze(AnalyzeArgs),
    /// Sweep inverse-power transforms and/or decide metric transformability
    Transform(TransformArgs),
    /// Run the invariant suite over the library modules
    Verify(VerifyArgs),
    /// Gallery catalog
    #[command(subcommand)]
    Gallery(GalleryCmd),
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// List gallery families, their variants, and their flags
    List,
}

/// Flags shared by `analyze` and `transform`.
#[derive(Args)]
struct CaseArgs {
    /// TOML config file; flags override its fields
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Gallery family: exp, rkhs, spherical, pathological; accepts the
    /// `family:variant` shorthand (e.g. `exp:inv_x`)
    #[arg(long)]
    gallery: Option<String>,
    /// Variant within the gallery family (see `gallery list`)
    #[arg(long)]
    g: Option<String>,
    /// Modulation step 1/L for the exp family
    #[arg(long)]
    b: Option<f64>,
    /// Weight exponent for the rkhs family
    #[arg(long)]
    n: Option<i32>,
    /// Family size for the pathological cases
    #[arg(long)]
    size: Option<usize>,
    /// Number of refinement levels in the truncation scan
    #[arg(long)]
    levels: Option<usize>,
    /// Coarsest grid size, doubled per level
    #[arg(long)]
    base_size: Option<usize>,
    /// External family file (JSON) instead of a gallery case
    #[arg(long, value_name = "PATH")]
    family: Option<String>,
    /// Probe seed; overrides SEMIFRAME_SEED and the config file
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// Write CSV sidecars into this directory
    #[arg(long, value_name = "DIR")]
    csv_dir: Option<String>,
}

impl CaseArgs {
    fn split(self) -> (Option<PathBuf>, RunConfig) {
        let flags = RunConfig {
            gallery: self.gallery,
            g: self.g,
            b: self.b,
            n: self.n,
            size: self.size,
            levels: self.levels,
            base_size: self.base_size,
            family: self.family,
            seed: self.seed,
            out: self.out,
            csv_dir: self.csv_dir,
            ..RunConfig::default()
        };
        (self.config, flags)
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    case: CaseArgs,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Comma-separated transform exponents k
    #[arg(long, value_delimiter = ',', value_name = "K,K,...")]
    k_grid: Option<Vec<f64>>,
    /// Comma-separated weight exponents m
    #[arg(long, value_delimiter = ',', value_name = "M,M,...")]
    m_grid: Option<Vec<f64>>,
    /// Run the metric-transformability decision procedure
    #[arg(long)]
    metric: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// TOML config file; flags override its fields
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Restrict to one module: hilbert, frames, genframe, transforms,
    /// lattice, gallery
    #[arg(long)]
    module: Option<String>,
    /// Ambient dimension for the random-operator checks
    #[arg(long)]
    dim: Option<usize>,
    /// Probe seed; overrides SEMIFRAME_SEED and the config file
    #[arg(long)]
    seed: Option<u64>,
    /// Inject a perturbation so the first check of each module must fail
    #[arg(long)]
    inject: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// Write CSV sidecars into this directory
    #[arg(long, value_name = "DIR")]
    csv_dir: Option<String>,
}

fn load_config_file(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    RunConfig::parse(&text).map_err(|e| match e {
        CliError::ConfigParse(msg) => {
            CliError::ConfigParse(format!("{}: {msg}", path.display()))
        }
        other => other,
    })
}

fn effective_config(file: Option<PathBuf>, flags: RunConfig) -> Result<RunConfig> {
    let file_cfg = file.as_deref().map(load_config_file).transpose()?;
    let env_seed = std::env::var("SEMIFRAME_SEED").ok();
    RunConfig::layered(file_cfg, env_seed.as_deref(), flags)
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    let (cfg, runner): (RunConfig, fn(&RunConfig) -> Result<report::Report>) =
        match cli.command {
            Cmd::Gallery(GalleryCmd::List) => {
                print!("{}", commands::gallery_listing());
                return Ok(true);
            }
            Cmd::Analyze(args) => {
                let (file, flags) = args.case.split();
                (effective_config(file, flags)?, commands::cmd_analyze)
            }
            Cmd::Transform(args) => {
                let (file, mut flags) = args.case.split();
                flags.k_grid = args.k_grid;
                flags.m_grid = args.m_grid;
                flags.metric = args.metric.then_some(true);
                (effective_config(file, flags)?, commands::cmd_transform)
            }
            Cmd::Verify(args) => {
                let flags = RunConfig {
                    module: args.module,
                    dim: args.dim,
                    seed: args.seed,
                    inject: args.inject.then_some(true),
                    out: args.out,
                    csv_dir: args.csv_dir,
                    ..RunConfig::default()
                };
                (effective_config(args.config, flags)?, commands::cmd_verify)
            }
        };
    let report = runner(&cfg)?;
    commands::emit_outputs(&report, &cfg)?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
