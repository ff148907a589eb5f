//! Eigenvalue sequences of Toeplitz operators with invariant symbols.
//!
//! For a separately radial symbol `a`, `T_a` is diagonal in the orthonormal
//! basis `e_m = z^m / ‖z^m‖_α` with eigenvalue
//!
//! ```text
//! γ(m) = Γ(n+|m|+α+1) / (m! Γ(α+1)) ∫_Δ a(√r) r^m (1 - Σ r_j)^α dr.
//! ```
//!
//! For a radial symbol the eigenvalue depends only on `k = |m|`:
//!
//! ```text
//! γ̂(k) = ∫_0^1 a(√r) r^{n+k-1} (1-r)^α dr / B(n+k, α+1).
//! ```
//!
//! Truncations are by total degree, listing the basis in graded lexicographic
//! order (see [`special::enumerate_degree`]).

mod operator;
mod symbol;

pub use operator::{truncated_matrix, MatrixMethod, TruncatedOperator};
pub use symbol::{Factor, SymbolKind, SymbolSpec};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{self, DEFAULT_ORDER};
use crate::special::{self, MultiIndex, Weight};

/// Largest spread allowed inside a level set `{|m| = k}` of a sequence
/// treated as radial.
pub const LEVEL_SPREAD_TOLERANCE: f64 = 1e-8;

/// Quadrature orders for eigenvalue and oracle evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Orders {
    /// Order of 1-D radial rules.
    pub radial: usize,
    /// Per-axis order of simplex rules.
    pub simplex: usize,
    /// Per-axis radial order of the polar oracle.
    pub oracle_radial: usize,
    /// Angular nodes per axis for the oracle; `None` means `2 K + 4`.
    pub angular: Option<usize>,
}

impl Default for Orders {
    fn default() -> Self {
        Orders {
            radial: DEFAULT_ORDER,
            simplex: DEFAULT_ORDER,
            oracle_radial: crate::oracle::DEFAULT_RADIAL_ORDER,
            angular: None,
        }
    }
}

impl Orders {
    pub fn angular_for(&self, max_degree: u32) -> usize {
        self.angular.unwrap_or(2 * max_degree as usize + 4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceMethod {
    ClosedFormQuadrature,
    Oracle,
}

/// The diagonal `γ(m)` of a Toeplitz operator over `{|m| <= max_degree}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueSequence {
    pub n: usize,
    pub alpha: f64,
    pub max_degree: u32,
    pub symbol: String,
    pub kind: SymbolKind,
    pub bound: f64,
    pub method: SequenceMethod,
    /// Largest change seen when halving the quadrature order.
    pub error_estimate: f64,
    /// `γ̂(0..=max_degree)` for sequences generated from radial symbols.
    pub per_degree: Option<Vec<f64>>,
    /// Graded-lex basis, aligned with `values`.
    pub basis: Vec<MultiIndex>,
    pub values: Vec<f64>,
}

impl EigenvalueSequence {
    pub fn weight(&self) -> Result<Weight> {
        Weight::new(self.alpha, self.n)
    }

    pub fn value(&self, m: &MultiIndex) -> Option<f64> {
        self.basis
            .iter()
            .position(|b| b == m)
            .map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.basis.iter().zip(self.values.iter().copied())
    }

    /// `max - min` of the values on `{|m| = k}`.
    pub fn level_spread(&self, k: u32) -> f64 {
        let (lo, hi) = self
            .iter()
            .filter(|(m, _)| m.degree() == k)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, v)| {
                (lo.min(v), hi.max(v))
            });
        if lo > hi {
            0.0
        } else {
            hi - lo
        }
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

fn ln_separately_radial_prefactor(m: &MultiIndex, w: &Weight) -> f64 {
    let n = w.n() as f64;
    let a1 = w.alpha() + 1.0;
    libm::lgamma(n + f64::from(m.degree()) + a1) - m.ln_factorial() - libm::lgamma(a1)
}

/// `γ_{a,α}(m)` through the simplex integral.
///
/// Radial symbols are accepted too (they are separately radial) and are
/// evaluated as functions of `|z|` on the simplex.
pub fn gamma_separately_radial(
    a: &SymbolSpec,
    m: &MultiIndex,
    w: &Weight,
    order: usize,
) -> Result<f64> {
    a.check_dim(w.n())?;
    let integral = quadrature::integrate_simplex(a, m, w, order)?;
    Ok(ln_separately_radial_prefactor(m, w).exp() * integral)
}

/// `γ_{a,α}(m)` through the integral over `τ = {s ≥ 0, |s| < 1}` before the
/// substitution `r = s²`:
/// `2ⁿ Γ(n+|m|+α+1)/(m!Γ(α+1)) ∫_τ a(s) s^{2m} (1-|s|²)^α Π s_j ds_j`.
pub fn gamma_separately_radial_tau(
    a: &SymbolSpec,
    m: &MultiIndex,
    w: &Weight,
    order: usize,
) -> Result<f64> {
    a.check_dim(w.n())?;
    w.check_index(m)?;
    let exps: Vec<u32> = m.entries().iter().map(|e| 2 * e).collect();
    let integral = quadrature::integrate_tau_domain(a, &exps, w, order)?;
    let ln_two_n = w.n() as f64 * std::f64::consts::LN_2;
    Ok((ln_two_n + ln_separately_radial_prefactor(m, w)).exp() * integral)
}

fn require_radial(a: &SymbolSpec) -> Result<&Factor> {
    a.radial_profile()
        .ok_or_else(|| Error::argument(format!("symbol {a} is not radial")))
}

fn ln_beta_level(k: u32, w: &Weight) -> f64 {
    let nk = (w.n() as u32 + k) as f64;
    let b = w.alpha() + 1.0;
    libm::lgamma(nk) + libm::lgamma(b) - libm::lgamma(nk + b)
}

/// `γ̂_{a,α}(k)` for a radial symbol.
pub fn gamma_radial(a: &SymbolSpec, k: u32, w: &Weight, order: usize) -> Result<f64> {
    let profile = require_radial(a)?;
    let integral = quadrature::integrate_radial_profile(profile, k, w, order)?;
    Ok(integral / ln_beta_level(k, w).exp())
}

/// `γ̂_{a,α}(k) = 2∫_0^1 a(s) s^{2n+2k-1}(1-s²)^α ds / B(n+k, α+1)`.
pub fn gamma_radial_r_form(a: &SymbolSpec, k: u32, w: &Weight, order: usize) -> Result<f64> {
    let profile = require_radial(a)?;
    let integral = quadrature::integrate_radial_profile_r_form(profile, k, w, order)?;
    Ok(integral / ln_beta_level(k, w).exp())
}

fn coarse(order: usize) -> usize {
    (order / 2).max(1)
}

/// Diagonal of `T_a` on `{|m| <= max_degree}`.
///
/// Radial symbols get one `γ̂(k)` per degree, expanded over each level set;
/// separately radial symbols get one simplex integral per multi-index.
pub fn eigenvalue_sequence(
    a: &SymbolSpec,
    w: &Weight,
    max_degree: u32,
    orders: &Orders,
) -> Result<EigenvalueSequence> {
    a.check_dim(w.n())?;
    let basis = special::enumerate_degree(w.n(), max_degree);
    let (values, per_degree, error_estimate) = match a.kind() {
        SymbolKind::Radial => {
            let pairs = (0..=max_degree)
                .into_par_iter()
                .map(|k| {
                    let fine = gamma_radial(a, k, w, orders.radial)?;
                    let rough = gamma_radial(a, k, w, coarse(orders.radial))?;
                    Ok((fine, (fine - rough).abs()))
                })
                .collect::<Result<Vec<_>>>()?;
            let per: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let err = pairs.iter().fold(0.0, |acc: f64, p| acc.max(p.1));
            let values: Vec<f64> = basis.iter().map(|m| per[m.degree() as usize]).collect();
            (values, Some(per), err)
        }
        SymbolKind::SeparatelyRadial => {
            let pairs = basis
                .par_iter()
                .map(|m| {
                    let fine = gamma_separately_radial(a, m, w, orders.simplex)?;
                    let rough = gamma_separately_radial(a, m, w, coarse(orders.simplex))?;
                    Ok((fine, (fine - rough).abs()))
                })
                .collect::<Result<Vec<_>>>()?;
            let err = pairs.iter().fold(0.0, |acc: f64, p| acc.max(p.1));
            (pairs.into_iter().map(|p| p.0).collect(), None, err)
        }
    };
    if let Some(i) = values.iter().position(|v: &f64| !v.is_finite()) {
        return Err(Error::Numeric(format!(
            "non-finite eigenvalue at m = {}",
            basis[i]
        )));
    }
    Ok(EigenvalueSequence {
        n: w.n(),
        alpha: w.alpha(),
        max_degree,
        symbol: a.to_string(),
        kind: a.kind(),
        bound: a.bound(),
        method: SequenceMethod::ClosedFormQuadrature,
        error_estimate,
        per_degree,
        basis,
        values,
    })
}

/// Like [`eigenvalue_sequence`] but forces every symbol, radial or not,
/// through the per-multi-index simplex formula.
pub fn eigenvalue_sequence_separately_radial(
    a: &SymbolSpec,
    w: &Weight,
    max_degree: u32,
    order: usize,
) -> Result<EigenvalueSequence> {
    a.check_dim(w.n())?;
    let basis = special::enumerate_degree(w.n(), max_degree);
    let values = basis
        .par_iter()
        .map(|m| gamma_separately_radial(a, m, w, order))
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenvalueSequence {
        n: w.n(),
        alpha: w.alpha(),
        max_degree,
        symbol: a.to_string(),
        kind: SymbolKind::SeparatelyRadial,
        bound: a.bound(),
        method: SequenceMethod::ClosedFormQuadrature,
        error_estimate: 0.0,
        per_degree: None,
        basis,
        values,
    })
}

/// Pointwise product of two sequences: the diagonal of the product of the
/// two commuting diagonal operators.
pub fn compose_diagonal(
    s: &EigenvalueSequence,
    t: &EigenvalueSequence,
) -> Result<EigenvalueSequence> {
    if s.n != t.n || s.alpha.to_bits() != t.alpha.to_bits() || s.max_degree != t.max_degree {
        return Err(Error::argument(format!(
            "cannot compose sequences with (n, alpha, K) = ({}, {}, {}) and ({}, {}, {})",
            s.n, s.alpha, s.max_degree, t.n, t.alpha, t.max_degree
        )));
    }
    if s.basis != t.basis {
        return Err(Error::argument("sequences are indexed by different bases"));
    }
    let per_degree = match (&s.per_degree, &t.per_degree) {
        (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(a, b)| a * b).collect()),
        _ => None,
    };
    let kind = if s.kind == SymbolKind::Radial && t.kind == SymbolKind::Radial {
        SymbolKind::Radial
    } else {
        SymbolKind::SeparatelyRadial
    };
    let method = if s.method == t.method {
        s.method
    } else {
        SequenceMethod::Oracle
    };
    Ok(EigenvalueSequence {
        n: s.n,
        alpha: s.alpha,
        max_degree: s.max_degree,
        symbol: format!("({})*({})", s.symbol, t.symbol),
        kind,
        bound: s.bound * t.bound,
        method,
        error_estimate: s.error_estimate * t.bound
            + t.error_estimate * s.bound
            + s.error_estimate * t.error_estimate,
        per_degree,
        basis: s.basis.clone(),
        values: s.values.iter().zip(&t.values).map(|(a, b)| a * b).collect(),
    })
}

/// One point of the spectrum together with the dimension of its eigenspace
/// inside the truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub degree: u32,
    pub eigenvalue: f64,
    pub multiplicity: u64,
}

/// `(γ̂(k), dim Pᵏ(Cⁿ))` for `k <= max_degree`, for sequences constant on
/// every level set `{|m| = k}`.
pub fn spectrum_summary(s: &EigenvalueSequence) -> Result<Vec<SpectrumEntry>> {
    (0..=s.max_degree)
        .map(|k| {
            let spread = s.level_spread(k);
            if !(spread <= LEVEL_SPREAD_TOLERANCE) {
                return Err(Error::Consistency(format!(
                    "sequence is not constant on |m| = {k}: spread {spread:e}"
                )));
            }
            let eigenvalue = match &s.per_degree {
                Some(per) => per[k as usize],
                None => {
                    let level: Vec<f64> = s
                        .iter()
                        .filter(|(m, _)| m.degree() == k)
                        .map(|(_, v)| v)
                        .collect();
                    level.iter().sum::<f64>() / level.len() as f64
                }
            };
            Ok(SpectrumEntry {
                degree: k,
                eigenvalue,
                multiplicity: special::multiplicity(s.n, k),
            })
        })
        .collect()
}
