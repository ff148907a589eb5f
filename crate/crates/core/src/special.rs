//! Gamma and Beta evaluation, multi-index combinatorics and the closed-form
//! norms of the monomials `z^m` and of the degree-`k` vectors
//! `f_k = Σ_{|m|=k} √binom(k,m) z^m` in `A²_α(Bⁿ)`.
//!
//! Every Gamma quotient is assembled in log space and exponentiated once, so
//! degrees in the hundreds stay finite even though `Γ(x)` overflows at
//! `x ≈ 171.6`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multi-index `m ∈ Nⁿ` indexing the monomial `z^m = z₁^{m₁}···zₙ^{mₙ}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::argument("multi-index must have length n >= 1"));
        }
        Ok(MultiIndex(entries))
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n.max(1)])
    }

    /// The `j`-th unit vector `e_j` in `Nⁿ`.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.0[j] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `|m| = Σ m_j`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `ln m! = Σ ln m_j!`.
    pub fn ln_factorial(&self) -> f64 {
        self.0.iter().map(|&k| ln_factorial(k)).sum()
    }

    /// `m! = Π m_j!`, evaluated directly; overflows to infinity for large entries.
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&k| (1..=k).map(f64::from).product::<f64>())
            .product()
    }

    pub fn plus(&self, other: &MultiIndex) -> Result<MultiIndex> {
        check_same_dim(self, other)?;
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl From<MultiIndex> for Vec<u32> {
    fn from(m: MultiIndex) -> Self {
        m.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_same_dim(a: &MultiIndex, b: &MultiIndex) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::argument(format!(
            "multi-index dimensions differ: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// The weight parameter `α > -1` of `dv_α = c_α (1 - |z|²)^α dv` together with
/// the ambient complex dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weight {
    alpha: f64,
    n: usize,
}

impl Weight {
    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(Error::domain(format!(
                "alpha must satisfy alpha > -1, got {alpha}"
            )));
        }
        if n == 0 {
            return Err(Error::domain("dimension n must be at least 1"));
        }
        Ok(Weight { alpha, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn check_index(&self, m: &MultiIndex) -> Result<()> {
        if m.dim() != self.n {
            return Err(Error::argument(format!(
                "multi-index {m} has length {} but n = {}",
                m.dim(),
                self.n
            )));
        }
        Ok(())
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

// Callers guarantee a positive argument.
fn lgamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    libm::lgamma(x)
}

fn ln_factorial(k: u32) -> f64 {
    lgamma_pos(f64::from(k) + 1.0)
}

/// `ln B(a, b)`.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain(format!(
            "beta requires a, b > 0, got ({a}, {b})"
        )));
    }
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// Euler's Beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    ln_beta(a, b).map(f64::exp)
}

/// Normalizing constant making `v_α` a probability measure on `Bⁿ`:
/// `c_α = 1 / (n B(n, α+1))`.
pub fn c_alpha(w: &Weight) -> f64 {
    let n = w.n as f64;
    (-(n.ln() + lgamma_pos(n) + lgamma_pos(w.alpha + 1.0) - lgamma_pos(n + w.alpha + 1.0))).exp()
}

/// `ln ‖z^m‖²_α = ln m! + ln Γ(n+α+1) - ln Γ(n+|m|+α+1)`.
pub fn ln_monomial_norm_sq(m: &MultiIndex, w: &Weight) -> Result<f64> {
    w.check_index(m)?;
    let s = w.n as f64 + w.alpha + 1.0;
    Ok(m.ln_factorial() + lgamma_pos(s) - lgamma_pos(s + f64::from(m.degree())))
}

/// `‖z^m‖²_α = m! Γ(n+α+1) / Γ(n+|m|+α+1)`.
pub fn monomial_norm_sq(m: &MultiIndex, w: &Weight) -> Result<f64> {
    ln_monomial_norm_sq(m, w).map(f64::exp)
}

/// `ln (k! / (m₁!···mₙ!))`.
pub fn ln_multinomial(k: u32, m: &MultiIndex) -> Result<f64> {
    check_multinomial(k, m)?;
    Ok(ln_factorial(k) - m.ln_factorial())
}

/// Multinomial coefficient `binom(k, m) = k!/(m₁!···mₙ!)` for `|m| = k`.
///
/// Exact while the value fits in a `u128`, log-space otherwise.
pub fn multinomial(k: u32, m: &MultiIndex) -> Result<f64> {
    check_multinomial(k, m)?;
    let mut acc: Option<u128> = Some(1);
    let mut partial = 0u64;
    for &mj in m.entries() {
        partial += u64::from(mj);
        acc = acc.and_then(|a| binomial(partial, u64::from(mj)).and_then(|b| a.checked_mul(b)));
    }
    match acc {
        Some(v) => Ok(v as f64),
        None => ln_multinomial(k, m).map(f64::exp),
    }
}

fn check_multinomial(k: u32, m: &MultiIndex) -> Result<()> {
    if m.degree() != k {
        return Err(Error::argument(format!(
            "multinomial requires |m| = k, got |m| = {} and k = {k}",
            m.degree()
        )));
    }
    Ok(())
}

/// `‖f_k‖²_α = B(n+k, α+1) / B(n, α+1)`.
pub fn fk_norm_sq(k: u32, w: &Weight) -> f64 {
    let n = w.n as f64;
    let b = w.alpha + 1.0;
    let kf = f64::from(k);
    // ln B(n+k,b) - ln B(n,b); the lgamma(b) terms cancel
    (lgamma_pos(n + kf) - lgamma_pos(n + kf + b) - lgamma_pos(n) + lgamma_pos(n + b)).exp()
}

/// Binomial coefficient, `None` on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Dimension of the homogeneous polynomials of degree `k` on `Cⁿ`,
/// `binom(n+k-1, n-1)`.
pub fn multiplicity(n: usize, k: u32) -> u64 {
    assert!(n >= 1, "multiplicity requires n >= 1");
    let v = binomial((n - 1) as u64 + u64::from(k), (n - 1) as u64)
        .expect("multiplicity overflows u128");
    u64::try_from(v).expect("multiplicity overflows u64")
}

/// All multi-indices of length `n` and degree exactly `k`, lexicographically
/// descending (so `(1,0)` precedes `(0,1)`).
pub fn enumerate_level(n: usize, k: u32) -> Vec<MultiIndex> {
    fn fill(pos: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos + 1 == cur.len() {
            cur[pos] = remaining;
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for v in (0..=remaining).rev() {
            cur[pos] = v;
            fill(pos + 1, remaining - v, cur, out);
        }
    }
    assert!(n >= 1, "enumerate_level requires n >= 1");
    let mut out = Vec::new();
    fill(0, k, &mut vec![0; n], &mut out);
    out
}

/// All multi-indices with `|m| <= max_degree` in graded lexicographic order:
/// degree-major, lexicographic within each degree.
pub fn enumerate_degree(n: usize, max_degree: u32) -> Vec<MultiIndex> {
    (0..=max_degree)
        .flat_map(|k| enumerate_level(n, k))
        .collect()
}
