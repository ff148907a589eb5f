use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;
use toeplitz_core::oracle::{DEFAULT_RADIAL_ORDER, DEFAULT_SAMPLES, MIN_SAMPLES};
use toeplitz_core::quadrature::DEFAULT_ORDER;
use toeplitz_core::{Error, Orders, Result, Weight};

/// Quadrature-oracle comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Complex dimension of the ball.
    #[arg(long, default_value_t = 2)]
    pub n: usize,

    /// Weight exponent, > -1.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Largest total degree |m| kept.
    #[arg(long = "max-degree", default_value_t = 6)]
    pub max_degree: u32,

    /// 1-D radial Gauss order; also the oracle's per-axis radial order
    /// (default 32 and 48 respectively).
    #[arg(long = "radial-N")]
    pub radial_n: Option<usize>,

    /// Per-axis simplex Gauss order.
    #[arg(long = "simplex-N", default_value_t = DEFAULT_ORDER)]
    pub simplex_n: usize,

    /// Angular nodes per axis for the oracle (default 2 * max-degree + 4).
    #[arg(long = "angular-M")]
    pub angular_m: Option<usize>,

    /// Monte Carlo sample count for the verify checks.
    #[arg(long = "mc-samples", default_value_t = DEFAULT_SAMPLES)]
    pub mc_samples: usize,

    /// Monte Carlo seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Absolute tolerance for quadrature-oracle comparisons.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

/// Validated run configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub alpha: f64,
    pub max_degree: u32,
    pub radial_n: usize,
    pub simplex_n: usize,
    pub oracle_radial_n: usize,
    pub angular_m: usize,
    pub mc_samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs) -> Result<Self> {
        Weight::new(args.alpha, args.n)?;
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(Error::Argument(format!("--{name} must be at least 1")))
            } else {
                Ok(v)
            }
        };
        if let Some(r) = args.radial_n {
            positive("radial-N", r)?;
        }
        positive("simplex-N", args.simplex_n)?;
        let angular_m = args.angular_m.unwrap_or(2 * args.max_degree as usize + 4);
        positive("angular-M", angular_m)?;
        if args.mc_samples < MIN_SAMPLES {
            return Err(Error::Argument(format!(
                "--mc-samples must be at least {MIN_SAMPLES}"
            )));
        }
        if !(args.tolerance.is_finite() && args.tolerance > 0.0) {
            return Err(Error::Argument(
                "--tolerance must be a positive number".into(),
            ));
        }
        Ok(RunConfig {
            n: args.n,
            alpha: args.alpha,
            max_degree: args.max_degree,
            radial_n: args.radial_n.unwrap_or(DEFAULT_ORDER),
            simplex_n: args.simplex_n,
            oracle_radial_n: args.radial_n.unwrap_or(DEFAULT_RADIAL_ORDER),
            angular_m,
            mc_samples: args.mc_samples,
            seed: args.seed,
            tolerance: args.tolerance,
            format: args.format,
            out: args.out.clone(),
        })
    }

    pub fn weight(&self) -> Weight {
        Weight::new(self.alpha, self.n).expect("validated in from_args")
    }

    pub fn orders(&self) -> Orders {
        Orders {
            radial: self.radial_n,
            simplex: self.simplex_n,
            oracle_radial: self.oracle_radial_n,
            angular: Some(self.angular_m),
        }
    }
}
