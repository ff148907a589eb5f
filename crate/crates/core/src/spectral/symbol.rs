use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{RadialProfile, RadiiProfile};

/// Grid size for the sampled sup-norm check done at construction.
const BOUND_SAMPLES: usize = 4096;

/// One-variable profile on `[0, 1)`, evaluated at a radius `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    /// `c`
    Const(f64),
    /// `s^p`, `p >= 0`
    Pow(f64),
    /// `low` for `s <= threshold`, `high` above.
    Step { threshold: f64, low: f64, high: f64 },
    /// `Σ c_i s^{2i}`
    Poly(Vec<f64>),
}

impl Factor {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Factor::Const(c) => *c,
            Factor::Pow(p) => s.powf(*p),
            Factor::Step {
                threshold,
                low,
                high,
            } => {
                if s <= *threshold {
                    *low
                } else {
                    *high
                }
            }
            Factor::Poly(coeffs) => {
                let s2 = s * s;
                coeffs.iter().rev().fold(0.0, |acc, c| acc * s2 + c)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = match self {
            Factor::Const(c) => c.is_finite(),
            Factor::Pow(p) => {
                if !(p.is_finite() && *p >= 0.0) {
                    return Err(Error::Validation(format!(
                        "pow({p}) is unbounded near the origin; exponent must be >= 0"
                    )));
                }
                true
            }
            Factor::Step {
                threshold,
                low,
                high,
            } => threshold.is_finite() && low.is_finite() && high.is_finite(),
            Factor::Poly(c) => {
                if c.is_empty() {
                    return Err(Error::Validation(
                        "poly() needs at least one coefficient".into(),
                    ));
                }
                c.iter().all(|x| x.is_finite())
            }
        };
        if !finite {
            return Err(Error::Validation(format!(
                "{self} has non-finite parameters"
            )));
        }
        Ok(())
    }

    /// An upper bound for `sup_{[0,1)} |f|`.
    fn bound(&self) -> f64 {
        match self {
            Factor::Const(c) => c.abs(),
            Factor::Pow(_) => 1.0,
            Factor::Step {
                threshold,
                low,
                high,
            } => {
                if *threshold >= 1.0 {
                    low.abs()
                } else if *threshold < 0.0 {
                    high.abs()
                } else {
                    low.abs().max(high.abs())
                }
            }
            Factor::Poly(c) => c.iter().map(|x| x.abs()).sum(),
        }
    }

    fn check_bound(&self, bound: f64) -> Result<()> {
        let worst = (0..=BOUND_SAMPLES)
            .map(|i| self.eval(i as f64 / BOUND_SAMPLES as f64).abs())
            .fold(0.0, f64::max);
        if !(worst <= bound * (1.0 + 1e-12) + 1e-300) {
            return Err(Error::Validation(format!(
                "{self}: sampled sup {worst} exceeds bound {bound}"
            )));
        }
        Ok(())
    }

    fn jumps(&self) -> Option<f64> {
        match self {
            Factor::Step {
                threshold,
                low,
                high,
            } if low != high => Some(*threshold),
            _ => None,
        }
    }
}

impl RadialProfile for Factor {
    fn eval(&self, s: f64) -> f64 {
        Factor::eval(self, s)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.jumps().into_iter().collect()
    }

    fn power(&self) -> f64 {
        match self {
            Factor::Pow(p) => *p,
            _ => 0.0,
        }
    }

    fn eval_reduced(&self, s: f64) -> f64 {
        match self {
            Factor::Pow(_) => 1.0,
            _ => Factor::eval(self, s),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Const(c) => write!(f, "const({c})"),
            Factor::Pow(p) => write!(f, "pow({p})"),
            Factor::Step {
                threshold,
                low,
                high,
            } => write!(f, "step({threshold},{low},{high})"),
            Factor::Poly(c) => {
                write!(f, "poly(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    /// `a(z) = f(|z|)`
    Radial,
    /// `a(z) = f_1(|z_1|) ··· f_n(|z_n|)`
    SeparatelyRadial,
}

/// A bounded real symbol invariant under `U(n)` (radial) or `Tⁿ`
/// (separately radial), with a verified bound on its sup-norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolSpec {
    kind: SymbolKind,
    factors: Vec<Factor>,
    bound: f64,
}

impl SymbolSpec {
    pub fn radial(profile: Factor) -> Result<Self> {
        profile.validate()?;
        let bound = profile.bound();
        profile.check_bound(bound)?;
        Ok(SymbolSpec {
            kind: SymbolKind::Radial,
            factors: vec![profile],
            bound,
        })
    }

    /// Product of one factor per axis; the number of factors fixes `n`.
    pub fn separately_radial(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Validation(
                "separately radial symbol needs one factor per axis".into(),
            ));
        }
        let mut bound = 1.0;
        for f in &factors {
            f.validate()?;
            let b = f.bound();
            f.check_bound(b)?;
            bound *= b;
        }
        Ok(SymbolSpec {
            kind: SymbolKind::SeparatelyRadial,
            factors,
            bound,
        })
    }

    /// The constant symbol `c` as a radial symbol.
    pub fn constant(c: f64) -> Result<Self> {
        Self::radial(Factor::Const(c))
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn is_radial(&self) -> bool {
        self.kind == SymbolKind::Radial
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Upper bound for `‖a‖_∞`.
    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// The radial profile, for radial symbols.
    pub fn radial_profile(&self) -> Option<&Factor> {
        match self.kind {
            SymbolKind::Radial => self.factors.first(),
            SymbolKind::SeparatelyRadial => None,
        }
    }

    /// Dimension fixed by the symbol, if any (radial symbols fit every `n`).
    pub fn dim(&self) -> Option<usize> {
        match self.kind {
            SymbolKind::Radial => None,
            SymbolKind::SeparatelyRadial => Some(self.factors.len()),
        }
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        match self.dim() {
            Some(d) if d != n => Err(Error::argument(format!(
                "symbol {self} has {d} axis factors but n = {n}"
            ))),
            _ => Ok(()),
        }
    }

    /// Whether `a >= 0` everywhere on the ball.
    pub fn is_nonnegative(&self) -> bool {
        self.factors.iter().all(|f| match f {
            Factor::Const(c) => *c >= 0.0,
            Factor::Pow(_) => true,
            Factor::Step { low, high, .. } => *low >= 0.0 && *high >= 0.0,
            Factor::Poly(_) => {
                (0..=BOUND_SAMPLES).all(|i| f.eval(i as f64 / BOUND_SAMPLES as f64) >= 0.0)
            }
        })
    }

    /// `a` at the point with radii `(|z_1|, …, |z_n|)`.
    pub fn eval_radii(&self, radii: &[f64]) -> f64 {
        match self.kind {
            SymbolKind::Radial => {
                let s = radii.iter().map(|x| x * x).sum::<f64>().sqrt();
                self.factors[0].eval(s)
            }
            SymbolKind::SeparatelyRadial => self
                .factors
                .iter()
                .zip(radii)
                .map(|(f, &s)| f.eval(s))
                .product(),
        }
    }
}

impl RadiiProfile for SymbolSpec {
    fn eval(&self, radii: &[f64]) -> f64 {
        self.eval_radii(radii)
    }

    fn has_breakpoints(&self) -> bool {
        self.factors.iter().any(|f| f.jumps().is_some())
    }

    fn axis_power(&self, axis: usize, n: usize) -> f64 {
        match self.kind {
            // with one axis the radius is the coordinate itself
            SymbolKind::Radial if n == 1 => self.factors[0].power(),
            SymbolKind::Radial => 0.0,
            SymbolKind::SeparatelyRadial => {
                self.factors.get(axis).map_or(0.0, RadialProfile::power)
            }
        }
    }

    fn eval_reduced(&self, radii: &[f64]) -> f64 {
        match self.kind {
            SymbolKind::Radial if radii.len() == 1 => self.factors[0].eval_reduced(radii[0]),
            SymbolKind::Radial => self.eval_radii(radii),
            SymbolKind::SeparatelyRadial => self
                .factors
                .iter()
                .zip(radii)
                .map(|(f, &s)| f.eval_reduced(s))
                .product(),
        }
    }

    fn breakpoints(&self, axis: usize, prefix: f64, out: &mut Vec<f64>) {
        match self.kind {
            // |s|² = prefix + r_axis + (inner axes) crosses t² somewhere in
            // the inner region as soon as r_axis < t² - prefix.
            SymbolKind::Radial => {
                if let Some(t) = self.factors[0].jumps() {
                    out.push(t * t - prefix);
                }
            }
            // Own jump at t_axis², plus the points where the remaining mass
            // 1 - prefix - r_axis equals a sum of inner thresholds: there an
            // inner piece appears or vanishes and the inner integral kinks.
            SymbolKind::SeparatelyRadial => {
                if let Some(t) = self.factors.get(axis).and_then(Factor::jumps) {
                    out.push(t * t);
                }
                let inner: Vec<f64> = self
                    .factors
                    .iter()
                    .skip(axis + 1)
                    .filter_map(Factor::jumps)
                    .map(|t| t * t)
                    .collect();
                for subset in 1u32..(1 << inner.len()) {
                    let sum: f64 = inner
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| subset & (1 << i) != 0)
                        .map(|(_, t)| t)
                        .sum();
                    out.push(1.0 - prefix - sum);
                }
            }
        }
    }
}

impl fmt::Display for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::Radial => write!(f, "radial:{}", self.factors[0]),
            SymbolKind::SeparatelyRadial => {
                write!(f, "seprad:")?;
                for (i, x) in self.factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}
