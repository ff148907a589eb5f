//! Command-line front end: eigenvalue sequences, truncated matrices,
//! spectrum summaries and the verification suite, written as CSV or JSON.

pub mod config;
pub mod output;
pub mod symbol;
pub mod verify;

use std::path::Path;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use toeplitz_core::spectral::{
    eigenvalue_sequence, spectrum_summary, truncated_matrix, SpectrumEntry,
};
use toeplitz_core::{Error, MatrixMethod, SymbolSpec};

use config::{Format, RunArgs, RunConfig};
pub use symbol::parse_symbol;

#[derive(Debug, Parser)]
#[command(
    name = "toeplitz",
    version,
    about = "Spectra of Toeplitz operators with invariant symbols on weighted Bergman spaces of the ball"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalue sequence γ(m) for |m| <= max-degree.
    Eigens {
        /// e.g. `radial:pow(2)` or `seprad:step(0.5,1,0)*const(1)`.
        #[arg(long)]
        symbol: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Truncated matrix in the normalized monomial basis.
    Matrix {
        /// e.g. `radial:pow(2)` or `seprad:step(0.5,1,0)*const(1)`.
        #[arg(long)]
        symbol: String,
        /// `oracle` integrates every entry instead of assuming diagonality.
        #[arg(long, value_enum, default_value_t = Method::Diagonal)]
        method: Method,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the invariant suite; exit code 1 if any check fails.
    Verify {
        /// Add checks for this symbol to the fixed battery.
        #[arg(long)]
        symbol: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Distinct eigenvalues with multiplicities (radial symbols only).
    Spectrum {
        /// e.g. `radial:pow(2)` or `seprad:step(0.5,1,0)*const(1)`.
        #[arg(long)]
        symbol: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Diagonal,
    Oracle,
}

/// JSON body of `spectrum`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub alpha: f64,
    pub max_degree: u32,
    pub symbol: String,
    pub entries: Vec<SpectrumEntry>,
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A check failed or a computation did not converge.
    Failure,
    /// Bad flags, grammar or a symbol unsuitable for the command.
    Usage,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Failure => 1,
            Status::Usage => 2,
        }
    }
}

fn symbol_for(text: &str, cfg: &RunConfig) -> Result<SymbolSpec> {
    let a = parse_symbol(text)?;
    a.check_dim(cfg.n)?;
    Ok(a)
}

fn write(cfg: &RunConfig, bytes: Vec<u8>) -> Result<()> {
    output::emit(cfg.out.as_deref().map(Path::new), &bytes)
}

fn eigens(cfg: &RunConfig, text: &str) -> Result<Status> {
    let a = symbol_for(text, cfg)?;
    let seq = eigenvalue_sequence(&a, &cfg.weight(), cfg.max_degree, &cfg.orders())?;
    let bytes = match cfg.format {
        Format::Csv => output::eigens_csv(&seq)?,
        Format::Json => output::json_bytes(&seq)?,
    };
    write(cfg, bytes)?;
    Ok(Status::Success)
}

fn matrix(cfg: &RunConfig, text: &str, method: Method) -> Result<Status> {
    let a = symbol_for(text, cfg)?;
    let w = cfg.weight();
    let orders = cfg.orders();
    let op = match method {
        Method::Diagonal => {
            truncated_matrix(&a, &w, cfg.max_degree, MatrixMethod::Diagonal, &orders)?
        }
        Method::Oracle => truncated_matrix(&a, &w, cfg.max_degree, MatrixMethod::Oracle, &orders)?,
    };
    let bytes = match cfg.format {
        Format::Csv => output::matrix_csv(&op)?,
        Format::Json => output::json_bytes(&op)?,
    };
    write(cfg, bytes)?;
    if method == Method::Oracle {
        let diag = truncated_matrix(&a, &w, cfg.max_degree, MatrixMethod::Diagonal, &orders)?;
        let diff = op.max_abs_diff(&diag)?;
        eprintln!(
            "max |oracle - diagonal| = {diff:e} (tolerance {:e}); max |Im| dropped = {:e}",
            cfg.tolerance, op.imag_residual
        );
        if !(diff <= cfg.tolerance && op.imag_residual <= cfg.tolerance) {
            eprintln!("oracle matrix disagrees with the diagonal realization beyond tolerance");
            return Ok(Status::Failure);
        }
    }
    Ok(Status::Success)
}

fn spectrum(cfg: &RunConfig, text: &str) -> Result<Status> {
    let a = symbol_for(text, cfg)?;
    if !a.is_radial() {
        bail!(Error::Argument(format!(
            "spectrum needs a radial symbol; {a} is separately radial and its eigenvalues are not constant on degrees"
        )));
    }
    let seq = eigenvalue_sequence(&a, &cfg.weight(), cfg.max_degree, &cfg.orders())?;
    let entries = spectrum_summary(&seq)?;
    let bytes = match cfg.format {
        Format::Csv => output::spectrum_csv(&entries)?,
        Format::Json => output::json_bytes(&SpectrumReport {
            n: cfg.n,
            alpha: cfg.alpha,
            max_degree: cfg.max_degree,
            symbol: a.to_string(),
            entries,
        })?,
    };
    write(cfg, bytes)?;
    Ok(Status::Success)
}

fn verify(cfg: &RunConfig, text: Option<&str>) -> Result<Status> {
    let a = text.map(|t| symbol_for(t, cfg)).transpose()?;
    let report = verify::run(cfg, a.as_ref());
    let bytes = match cfg.format {
        Format::Csv => output::checks_csv(&report.checks)?,
        Format::Json => output::json_bytes(&report)?,
    };
    write(cfg, bytes)?;
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "FAILED {}: residual {:?}, limit {:?}; {}",
            c.name, c.residual, c.limit, c.detail
        );
    }
    Ok(if report.passed {
        Status::Success
    } else {
        Status::Failure
    })
}

/// Runs one command.
pub fn run(cli: &Cli) -> Result<Status> {
    let (Command::Eigens { run, .. }
    | Command::Matrix { run, .. }
    | Command::Verify { run, .. }
    | Command::Spectrum { run, .. }) = &cli.command;
    let cfg = RunConfig::from_args(run)?;
    match &cli.command {
        Command::Eigens { symbol, .. } => eigens(&cfg, symbol),
        Command::Matrix { symbol, method, .. } => matrix(&cfg, symbol, *method),
        Command::Verify { symbol, .. } => verify(&cfg, symbol.as_deref()),
        Command::Spectrum { symbol, .. } => spectrum(&cfg, symbol),
    }
}

/// Exit status for an error escaping [`run`].
pub fn classify(err: &anyhow::Error) -> Status {
    match err.downcast_ref::<Error>() {
        Some(Error::Numeric(_) | Error::Consistency(_)) => Status::Failure,
        Some(_) => Status::Usage,
        None => Status::Failure,
    }
}

/// One-line JSON diagnostic for standard error.
pub fn diagnostic(err: &anyhow::Error) -> String {
    let kind = match err.downcast_ref::<Error>() {
        Some(Error::Domain(_)) => "domain",
        Some(Error::Argument(_)) => "argument",
        Some(Error::Numeric(_)) => "numeric",
        Some(Error::Parse { .. }) => "parse",
        Some(Error::Validation(_)) => "validation",
        Some(Error::Consistency(_)) => "consistency",
        None => "io",
    };
    serde_json::json!({ "error": kind, "message": format!("{err:#}") }).to_string()
}
