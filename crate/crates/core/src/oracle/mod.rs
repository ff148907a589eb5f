//! Brute-force weighted Bergman inner products `⟨a z^m, z^{m'}⟩_α`.
//!
//! Both oracles integrate over the ball directly and normalize by monomial
//! norms they integrate themselves, so they never call the Gamma quotients
//! that the eigenvalue formulas are built from. The only code shared with
//! [`crate::spectral`] is Gauss-Jacobi node generation.
//!
//! * [`PolarOracle`] writes `z_j = s_j e^{iθ_j}`; the angular factor is a
//!   trapezoid sum over the torus (exact for the trigonometric polynomials
//!   that occur) and the radial factor an iterated Gauss rule on
//!   `{s ≥ 0, |s| < 1}`.
//! * [`MonteCarloOracle`] draws `z` from `v_α` itself: `|z|² ~ Beta(n, α+1)`
//!   with a uniform direction on the sphere.

mod monte_carlo;
mod polar;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use monte_carlo::{inner_product_mc, MonteCarloOracle};
pub use polar::{fk_norm_oracle, inner_product_polar, monomial_norm_sq_oracle, PolarOracle};

/// Default per-axis radial order of the polar oracle.
pub const DEFAULT_RADIAL_ORDER: usize = 48;

/// Default Monte Carlo sample count.
pub const DEFAULT_SAMPLES: usize = 200_000;

/// Smallest sample count the Monte Carlo oracle accepts.
pub const MIN_SAMPLES: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    PolarQuadrature,
    MonteCarlo,
}

/// Work spent on an oracle value; enough to reproduce it bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Effort {
    Polar {
        radial_order: usize,
        angular_order: usize,
    },
    MonteCarlo {
        samples: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: Complex64,
    /// Quadrature: change under halving the radial order. Monte Carlo: one
    /// standard error.
    pub error_estimate: f64,
    pub method: OracleMethod,
    pub effort: Effort,
}

/// Entries of a whole truncated matrix with per-entry error estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleMatrix {
    pub values: DMatrix<Complex64>,
    pub errors: DMatrix<f64>,
}
