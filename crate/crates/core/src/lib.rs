//! Spectral data of Toeplitz operators with separately radial and radial
//! symbols on the weighted Bergman spaces `A²_α(Bⁿ)` of the complex unit ball.
//!
//! Toeplitz operators whose symbols are invariant under the torus `Tⁿ`
//! (separately radial) or under `U(n)` (radial) are diagonal in the
//! normalized monomial basis `e_m = z^m / ‖z^m‖_α`. This crate evaluates the
//! diagonal ("eigenvalue sequence") with Gauss-Jacobi quadrature and checks it
//! against a brute-force integration oracle that never touches the closed
//! forms.
//!
//! * [`special`]: log-gamma, Beta, monomial norms, multi-index combinatorics.
//! * [`quadrature`]: Gauss-Jacobi rules, simplex and torus rules.
//! * [`spectral`]: symbols, eigenvalue sequences, truncated matrices.
//! * [`oracle`]: polar-coordinate and Monte Carlo inner products.
//!
//! ```
//! use toeplitz_core::{spectral, SymbolSpec, Weight};
//!
//! let w = Weight::new(0.0, 2).unwrap();
//! let a = SymbolSpec::radial(toeplitz_core::Factor::Pow(2.0)).unwrap();
//! // (n + k) / (n + k + α + 1) with k = 1
//! let g = spectral::gamma_radial(&a, 1, &w, 32).unwrap();
//! assert!((g - 0.75).abs() < 1e-14);
//! ```

pub mod error;
pub mod oracle;
pub mod quadrature;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use oracle::{OracleMethod, OracleResult};
pub use quadrature::{Domain, QuadratureRule};
pub use special::{MultiIndex, Weight};
pub use spectral::{
    EigenvalueSequence, Factor, MatrixMethod, Orders, SequenceMethod, SymbolKind, SymbolSpec,
    TruncatedOperator,
};
