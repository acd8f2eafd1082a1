//! `ptsim` — coincidence curves of two-photon interference in lossy
//! linear mode networks.
//!
//! Subcommands: `sweep` writes coincidence curves over a loss range as
//! CSV; `threshold` locates the loss value where the effective spectrum
//! degenerates; `crossing` locates the meeting point of the bosonic and
//! fermionic curves; `schur` prints the threshold factorization;
//! `validate` runs the built-in cross-validation suite.
//!
//! Exit codes: 0 success; 1 invalid input (configuration, arguments,
//! I/O); 2 numerical failure (non-convergence or an internal
//! consistency breach); 3 structural absence (no degeneracy or no
//! crossing in the searched range).

mod config;
mod output;

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use ptsim_core::interference::{find_crossing, gamma_grid, sweep_gamma, Method};
use ptsim_core::lindblad::coupler::sweep_closed_form;
use ptsim_core::lindblad::sweep_lindblad;
use ptsim_core::matrix::CMatrix;
use ptsim_core::system::{find_ep_threshold, rotation_at_threshold, RotationMode};
use ptsim_core::validate::run_all;

use config::Prepared;

/// Anything that can end a run early, mapped onto the exit-code
/// contract.
#[derive(Debug)]
pub enum CliError {
    Core(ptsim_core::Error),
    Config { path: PathBuf, message: String },
    Io { path: PathBuf, source: std::io::Error },
    ChecksFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Config { .. } | CliError::Io { .. } => 1,
            CliError::ChecksFailed { .. } => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{}", e),
            CliError::Config { path, message } => {
                write!(f, "invalid configuration {}: {}", path.display(), message)
            }
            CliError::Io { path, source } => write!(f, "{}: {}", path.display(), source),
            CliError::ChecksFailed { failed, total } => {
                write!(f, "{} of {} checks failed", failed, total)
            }
        }
    }
}

impl From<ptsim_core::Error> for CliError {
    fn from(e: ptsim_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser)]
#[command(
    name = "ptsim",
    version,
    about = "Coincidence curves of two-photon interference in lossy mode networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the loss scale and write coincidence curves as CSV
    Sweep(SweepArgs),
    /// Locate the loss value where the effective spectrum degenerates
    Threshold(RangeArgs),
    /// Locate the crossing of the bosonic and fermionic curves
    Crossing(RangeArgs),
    /// Run the built-in cross-validation suite
    Validate(ConfigArgs),
    /// Factorize the effective generator at the threshold, as CSV
    Schur(SchurArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// Path to the JSON run configuration
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct RangeArgs {
    #[command(flatten)]
    base: ConfigArgs,
    /// Lower end of the search range (default: threshold searches start
    /// at 0, crossing searches use the configured sweep range)
    #[arg(long)]
    gamma_min: Option<f64>,
    /// Upper end of the search range (default: threshold searches cover
    /// eight coupling scales, crossing searches use the configured
    /// sweep range)
    #[arg(long)]
    gamma_max: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    base: ConfigArgs,
    /// Sweep start (default from the config)
    #[arg(long)]
    gamma_min: Option<f64>,
    /// Sweep end (default from the config)
    #[arg(long)]
    gamma_max: Option<f64>,
    /// Number of grid points (default from the config)
    #[arg(long)]
    steps: Option<usize>,
    /// Computation method, repeatable (default from the config):
    /// scattering, lindblad or closed_form
    #[arg(long = "method")]
    methods: Vec<String>,
    /// Output CSV path (default from the config)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SchurArgs {
    #[command(flatten)]
    base: ConfigArgs,
    /// Lower end of the threshold search (default 0)
    #[arg(long)]
    gamma_min: Option<f64>,
    /// Upper end of the threshold search (default: eight coupling
    /// scales)
    #[arg(long)]
    gamma_max: Option<f64>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                e.exit()
            }
            _ => {
                eprint!("{}", e);
                std::process::exit(1);
            }
        },
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e);
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) => run_sweep(args),
        Command::Threshold(args) => run_threshold(args),
        Command::Crossing(args) => run_crossing(args),
        Command::Validate(args) => run_validate(args),
        Command::Schur(args) => run_schur(args),
    }
}

/// Default window for threshold hunts: the degeneracy of interest sits
/// within a few coupling scales of zero.
fn threshold_window(prepared: &Prepared, lo: Option<f64>, hi: Option<f64>) -> (f64, f64) {
    (
        lo.unwrap_or(0.0),
        hi.unwrap_or(8.0 * prepared.spec.coupling_scale()),
    )
}

/// The mode rotation for abstract layouts: the unitary Schur factor of
/// the effective generator at the located threshold.
fn rotation_for(prepared: &Prepared) -> Result<Option<CMatrix>, CliError> {
    if prepared.layout.rotation_mode != RotationMode::Abstract {
        return Ok(None);
    }
    let (lo, hi) = threshold_window(prepared, None, None);
    let threshold = find_ep_threshold(&prepared.spec, lo, hi)?;
    let factorization = rotation_at_threshold(&prepared.spec, threshold.gamma)?;
    Ok(Some(factorization.rotation))
}

fn parse_methods(names: &[String]) -> Result<Vec<Method>, CliError> {
    let mut methods = Vec::new();
    for name in names {
        let m: Method = name.parse().map_err(CliError::Core)?;
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    methods.sort_by_key(|m| match m {
        Method::Scattering => 0,
        Method::Lindblad => 1,
        Method::ClosedForm => 2,
    });
    Ok(methods)
}

fn run_sweep(args: SweepArgs) -> Result<(), CliError> {
    let prepared = config::load(&args.base.config)?;
    let lo = args.gamma_min.unwrap_or(prepared.gamma_min);
    let hi = args.gamma_max.unwrap_or(prepared.gamma_max);
    let steps = args.steps.unwrap_or(prepared.steps);
    let grid = gamma_grid(lo, hi, steps)?;
    let methods = if args.methods.is_empty() {
        prepared.methods.clone()
    } else {
        parse_methods(&args.methods)?
    };

    let needs_rotation = methods.iter().any(|m| *m != Method::ClosedForm);
    let rotation = if needs_rotation { rotation_for(&prepared)? } else { None };

    let mut curves = Vec::with_capacity(methods.len());
    for method in &methods {
        let curve = match method {
            Method::Scattering => sweep_gamma(
                &prepared.spec,
                &prepared.layout,
                rotation.as_ref(),
                &grid,
                &prepared.digest,
            )?,
            Method::Lindblad => sweep_lindblad(
                &prepared.spec,
                &prepared.layout,
                rotation.as_ref(),
                &grid,
                &prepared.digest,
            )?,
            Method::ClosedForm => {
                let kappa = prepared.spec.as_coupler().ok_or_else(|| {
                    CliError::Core(ptsim_core::Error::Capability(
                        "the closed_form method covers the canonical two-mode coupler only"
                            .into(),
                    ))
                })?;
                sweep_closed_form(kappa, prepared.layout.lossy_length(), &grid, &prepared.digest)?
            }
        };
        curves.push(curve);
    }

    let out_path = args.out.unwrap_or(prepared.output_path);
    let file = File::create(&out_path)
        .map_err(|source| CliError::Io { path: out_path.clone(), source })?;
    let mut writer = BufWriter::new(file);
    output::write_curves(&mut writer, &curves)
        .and_then(|()| writer.flush())
        .map_err(|source| CliError::Io { path: out_path.clone(), source })?;
    let rows: usize = curves.iter().map(|c| c.points.len()).sum();
    eprintln!("wrote {} rows to {}", rows, out_path.display());
    Ok(())
}

fn run_threshold(args: RangeArgs) -> Result<(), CliError> {
    let prepared = config::load(&args.base.config)?;
    let (lo, hi) = threshold_window(&prepared, args.gamma_min, args.gamma_max);
    let threshold = find_ep_threshold(&prepared.spec, lo, hi)?;
    eprintln!("spectral gap {:.3e} at the threshold", threshold.gap);
    println!("{:.16e}", threshold.gamma);
    Ok(())
}

fn run_crossing(args: RangeArgs) -> Result<(), CliError> {
    let prepared = config::load(&args.base.config)?;
    let rotation = rotation_for(&prepared)?;
    let lo = args.gamma_min.unwrap_or(prepared.gamma_min);
    let hi = args.gamma_max.unwrap_or(prepared.gamma_max);
    let crossing =
        find_crossing(&prepared.spec, &prepared.layout, rotation.as_ref(), lo, hi)?;
    println!("{:.16e}", crossing);
    Ok(())
}

fn run_validate(args: ConfigArgs) -> Result<(), CliError> {
    // Loading alone validates the configuration; the suite itself
    // checks the computation routes against each other.
    let _prepared = config::load(&args.config)?;
    let reports = run_all();
    println!("{:<38} {:<6} {:>13} {:>10}", "check", "status", "worst", "tolerance");
    let mut failed = 0usize;
    for r in &reports {
        if !r.passed {
            failed += 1;
        }
        println!(
            "{:<38} {:<6} {:>13.3e} {:>10.1e}",
            r.name,
            if r.passed { "pass" } else { "FAIL" },
            r.worst_residual,
            r.tolerance
        );
        if !r.passed {
            println!("    {}", r.detail);
        }
    }
    println!("{}/{} checks passed", reports.len() - failed, reports.len());
    if failed > 0 {
        return Err(CliError::ChecksFailed { failed, total: reports.len() });
    }
    Ok(())
}

fn run_schur(args: SchurArgs) -> Result<(), CliError> {
    let prepared = config::load(&args.base.config)?;
    let (lo, hi) = threshold_window(&prepared, args.gamma_min, args.gamma_max);
    let threshold = find_ep_threshold(&prepared.spec, lo, hi)?;
    let factorization = rotation_at_threshold(&prepared.spec, threshold.gamma)?;
    match args.out {
        Some(path) => {
            let file = File::create(&path)
                .map_err(|source| CliError::Io { path: path.clone(), source })?;
            let mut writer = BufWriter::new(file);
            output::write_schur(&mut writer, threshold.gamma, &factorization)
                .and_then(|()| writer.flush())
                .map_err(|source| CliError::Io { path: path.clone(), source })?;
            eprintln!("wrote factorization to {}", path.display());
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            output::write_schur(&mut lock, threshold.gamma, &factorization)
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
        }
    }
    Ok(())
}
