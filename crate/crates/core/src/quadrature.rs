//! Quadrature rules for the three integral shapes that occur here:
//!
//! * 1-D integrals on `[0, 1]` against `r^p (1 - r)^α` (Gauss-Jacobi);
//! * integrals over the simplex `Δ = {r ≥ 0, Σ r_j < 1}` against
//!   `r^m (1 - Σ r_j)^α`, reduced to the unit cube by the iterated map
//!   `r_j = (1 - r_1 - … - r_{j-1}) u_j`;
//! * integrals over the positive part of the ball `τ = {s ≥ 0, Σ s_j² < 1}`
//!   against `s^e (1 - |s|²)^α Π s_j`, and the angular torus `[0, 2π)ⁿ`.
//!
//! Endpoint singularities `(1 - r)^α` with `α ∈ (-1, 0)` are always absorbed
//! into a Jacobi weight and never sampled. Profiles with jump discontinuities
//! report their breakpoints, and the integrators split there so that every
//! piece is integrated by a rule whose integrand is smooth.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{self, MultiIndex, Weight};

/// Per-axis order used for 1-D and simplex rules unless configured otherwise.
pub const DEFAULT_ORDER: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    UnitInterval,
    Simplex(usize),
    TorusAngles(usize),
}

/// Exponents of the weight `r^power (1 - r)^alpha` a rule integrates against.
/// For simplex rules `power` is unused and the weight is `r^m (1 - Σ r)^alpha`;
/// torus rules carry zeros.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightExponents {
    pub alpha: f64,
    pub power: f64,
}

/// Nodes and positive weights. `nodes` is row-major with `dim` coordinates per node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: Domain,
    exponents: WeightExponents,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn exponents(&self) -> WeightExponents {
        self.exponents
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[f64]> {
        self.nodes.chunks_exact(self.dim)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ w_i f(x_i)`.
    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> f64 {
        self.nodes().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }

    /// Scalar form of [`integrate`](Self::integrate) for 1-D rules.
    pub fn integrate_1d<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        debug_assert_eq!(self.dim, 1);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, w)| w * f(x))
            .sum()
    }
}

/// Three-term recurrence of the orthonormal polynomials for `r^p (1-r)^a` on
/// `[0, 1]`: `b_{k+1} π_{k+1} = (r - a_k) π_k - b_k π_{k-1}`.
/// Returns `(a_0..a_{len-1}, b_1..b_len)`.
fn jacobi_recurrence(len: usize, a: f64, p: f64) -> (Vec<f64>, Vec<f64>) {
    // Classical Jacobi on [-1, 1] with (1-x)^a (1+x)^p, then x = 2r - 1.
    let (al, be) = (a, p);
    let s = al + be;
    let diag = (0..len)
        .map(|k| {
            let kf = k as f64;
            let d = if k == 0 {
                (be - al) / (s + 2.0)
            } else {
                (be * be - al * al) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0))
            };
            (d + 1.0) / 2.0
        })
        .collect();
    let off = (1..=len)
        .map(|k| {
            let kf = k as f64;
            let sq = if k == 1 {
                4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s).powi(2) * (3.0 + s))
            } else {
                let t = 2.0 * kf + s;
                4.0 * kf * (kf + al) * (kf + be) * (kf + s) / (t * t * (t + 1.0) * (t - 1.0))
            };
            sq.sqrt() / 2.0
        })
        .collect();
    (diag, off)
}

/// Values `π_0..π_N` and `π'_N` of the orthonormal polynomials at `x`.
fn orthonormal_eval(x: f64, diag: &[f64], off: &[f64], p0: f64, vals: &mut Vec<f64>) -> f64 {
    let n = diag.len();
    vals.clear();
    vals.push(p0);
    let (mut prev, mut cur) = (0.0, p0);
    let (mut dprev, mut dcur) = (0.0, 0.0);
    for k in 0..n {
        let b_prev = if k == 0 { 0.0 } else { off[k - 1] };
        let next = ((x - diag[k]) * cur - b_prev * prev) / off[k];
        let dnext = (cur + (x - diag[k]) * dcur - b_prev * dprev) / off[k];
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
        vals.push(cur);
    }
    dcur
}

/// `N`-point Gauss rule on `[0, 1]` for the weight `r^power (1 - r)^alpha`.
///
/// Nodes come from the Jacobi matrix (Golub-Welsch), are polished by Newton
/// steps on the degree-`N` orthonormal polynomial, and weights are taken from
/// the Christoffel function `1 / Σ_{k<N} π_k(x)²`. The weights sum to
/// `B(power + 1, alpha + 1)`.
pub fn gauss_jacobi_rule(order: usize, alpha: f64, power: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::argument("quadrature order must be at least 1"));
    }
    if !(alpha.is_finite() && alpha > -1.0) || !(power.is_finite() && power > -1.0) {
        return Err(Error::domain(format!(
            "Jacobi exponents must exceed -1, got alpha = {alpha}, power = {power}"
        )));
    }
    let mass = special::beta(power + 1.0, alpha + 1.0)?;
    let (diag, off) = jacobi_recurrence(order, alpha, power);

    let jm = DMatrix::from_fn(order, order, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            off[i]
        } else if j + 1 == i {
            off[j]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::try_new(jm, f64::EPSILON, 10_000).ok_or_else(|| {
        Error::Numeric(format!(
            "Jacobi matrix eigen-solver did not converge (N = {order})"
        ))
    })?;
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    let p0 = mass.sqrt().recip();
    let mut vals = Vec::with_capacity(order + 1);
    let mut weights = Vec::with_capacity(order);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let d = orthonormal_eval(*x, &diag, &off, p0, &mut vals);
            let step = vals[order] / d;
            if !step.is_finite() || step.abs() > 1e-6 {
                break;
            }
            *x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1e-300) {
                break;
            }
        }
        orthonormal_eval(*x, &diag, &off, p0, &mut vals);
        let christoffel: f64 = vals[..order].iter().map(|v| v * v).sum();
        weights.push(christoffel.recip());
    }

    if nodes.iter().any(|&x| !(x > 0.0 && x < 1.0)) || weights.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::Numeric(format!(
            "Gauss-Jacobi rule (N = {order}, alpha = {alpha}, power = {power}) left the unit interval"
        )));
    }

    Ok(QuadratureRule {
        dim: 1,
        nodes,
        weights,
        domain: Domain::UnitInterval,
        exponents: WeightExponents { alpha, power },
    })
}

/// Gauss-Legendre rule on `[0, 1]`.
pub fn gauss_legendre_rule(order: usize) -> Result<QuadratureRule> {
    gauss_jacobi_rule(order, 0.0, 0.0)
}

/// Tensor trapezoid rule on `[0, 2π)ⁿ` with `m` equispaced nodes per axis.
/// Integrates `e^{i q·θ}` exactly whenever `max |q_j| < m`.
pub fn torus_angle_rule(m: usize, n: usize) -> Result<QuadratureRule> {
    if m == 0 || n == 0 {
        return Err(Error::argument("torus rule needs m >= 1 and n >= 1"));
    }
    let count = m
        .checked_pow(n as u32)
        .ok_or_else(|| Error::argument("torus rule too large"))?;
    let step = std::f64::consts::TAU / m as f64;
    let w = step.powi(n as i32);
    let mut nodes = Vec::with_capacity(count * n);
    for flat in 0..count {
        let mut rest = flat;
        for _ in 0..n {
            nodes.push((rest % m) as f64 * step);
            rest /= m;
        }
    }
    Ok(QuadratureRule {
        dim: n,
        nodes,
        weights: vec![w; count],
        domain: Domain::TorusAngles(n),
        exponents: WeightExponents {
            alpha: 0.0,
            power: 0.0,
        },
    })
}

/// A function of one radius `s = |z| ∈ [0, 1)`.
pub trait RadialProfile: Sync {
    fn eval(&self, s: f64) -> f64;

    /// Jump locations in `s`, if any.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Exponent `q` with `eval(s) = s^q eval_reduced(s)`; integrators move
    /// `s^q` into the Jacobi weight so fractional powers cost no accuracy.
    fn power(&self) -> f64 {
        0.0
    }

    fn eval_reduced(&self, s: f64) -> f64 {
        self.eval(s)
    }
}

impl<F: Fn(f64) -> f64 + Sync> RadialProfile for F {
    fn eval(&self, s: f64) -> f64 {
        self(s)
    }
}

/// A function of the radii vector `(|z_1|, …, |z_n|)`.
pub trait RadiiProfile: Sync {
    fn eval(&self, radii: &[f64]) -> f64;

    fn has_breakpoints(&self) -> bool {
        false
    }

    /// Jump locations in the squared radius `r_axis = s_axis²` of the given
    /// axis, for fixed `s_0, …, s_{axis-1}` whose squares sum to `prefix`.
    /// Locations may fall outside the admissible range; callers filter.
    fn breakpoints(&self, _axis: usize, _prefix: f64, _out: &mut Vec<f64>) {}

    /// Exponent `q_j` of a pure factor `s_j^{q_j}` split off `eval` on an
    /// `n`-dimensional domain, as for [`RadialProfile::power`].
    fn axis_power(&self, _axis: usize, _n: usize) -> f64 {
        0.0
    }

    /// `eval` with every `s_j^{q_j}` divided out.
    fn eval_reduced(&self, radii: &[f64]) -> f64 {
        self.eval(radii)
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> RadiiProfile for F {
    fn eval(&self, radii: &[f64]) -> f64 {
        self(radii)
    }
}

/// The rules needed to integrate `f(x) x^p (1 - x)^a` over `[0, 1]` split at
/// interior breakpoints.
struct PiecewiseRules {
    power: f64,
    alpha: f64,
    full: QuadratureRule,
    // [0, b]: x = b y, weight y^p, (1 - by)^a moves into the integrand
    left: Option<QuadratureRule>,
    // [b, 1]: x = b + (1 - b) y, weight (1 - y)^a, x^p moves into the integrand
    right: Option<QuadratureRule>,
    // interior pieces carry the whole weight in the integrand
    middle: Option<QuadratureRule>,
}

impl PiecewiseRules {
    fn new(order: usize, alpha: f64, power: f64, with_pieces: bool) -> Result<Self> {
        let full = gauss_jacobi_rule(order, alpha, power)?;
        let (left, right, middle) = if with_pieces {
            (
                Some(gauss_jacobi_rule(order, 0.0, power)?),
                Some(gauss_jacobi_rule(order, alpha, 0.0)?),
                Some(gauss_legendre_rule(order)?),
            )
        } else {
            (None, None, None)
        };
        Ok(PiecewiseRules {
            power,
            alpha,
            full,
            left,
            right,
            middle,
        })
    }

    /// `∫_0^1 f(x) x^p (1 - x)^a dx` with `breaks` sorted, strictly inside (0, 1).
    fn integrate<F: FnMut(f64) -> f64>(&self, breaks: &[f64], mut f: F) -> f64 {
        if breaks.is_empty() {
            return self.full.integrate_1d(f);
        }
        let (left, right, middle) = match (&self.left, &self.right, &self.middle) {
            (Some(l), Some(r), Some(m)) => (l, r, m),
            _ => unreachable!("piecewise rules requested without pieces"),
        };
        let (p, a) = (self.power, self.alpha);
        let first = breaks[0];
        let last = breaks[breaks.len() - 1];

        let mut total =
            first.powf(p + 1.0) * left.integrate_1d(|y| f(first * y) * (1.0 - first * y).powf(a));
        for pair in breaks.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let h = hi - lo;
            total += h * middle.integrate_1d(|y| {
                let x = lo + h * y;
                f(x) * x.powf(p) * (1.0 - x).powf(a)
            });
        }
        let h = 1.0 - last;
        total += h.powf(a + 1.0)
            * right.integrate_1d(|y| {
                let x = last + h * y;
                f(x) * x.powf(p)
            });
        total
    }
}

fn tidy_breaks(breaks: &mut Vec<f64>) {
    breaks.retain(|&b| b > 0.0 && b < 1.0 && b.is_finite());
    breaks.sort_by(|a, b| a.total_cmp(b));
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::argument("quadrature order must be at least 1"));
    }
    Ok(())
}

/// `∫_0^1 profile(√r) r^{n+k-1} (1 - r)^α dr` by Gauss-Jacobi of the given order,
/// split at the profile's breakpoints.
pub fn integrate_radial_profile(
    profile: &dyn RadialProfile,
    k: u32,
    w: &Weight,
    order: usize,
) -> Result<f64> {
    check_order(order)?;
    let mut breaks: Vec<f64> = profile.breakpoints().iter().map(|s| s * s).collect();
    tidy_breaks(&mut breaks);
    let power = (w.n() as u32 + k - 1) as f64 + profile.power() / 2.0;
    let rules = PiecewiseRules::new(order, w.alpha(), power, !breaks.is_empty())?;
    Ok(rules.integrate(&breaks, |r| profile.eval_reduced(r.sqrt())))
}

/// `2 ∫_0^1 profile(s) s^{2n+2k-1} (1 - s²)^α ds`, the same integral as
/// [`integrate_radial_profile`] before the substitution `r = s²`, evaluated
/// on its own nodes.
pub fn integrate_radial_profile_r_form(
    profile: &dyn RadialProfile,
    k: u32,
    w: &Weight,
    order: usize,
) -> Result<f64> {
    check_order(order)?;
    let mut breaks = profile.breakpoints();
    tidy_breaks(&mut breaks);
    let alpha = w.alpha();
    let power = (2 * (w.n() as u32 + k) - 1) as f64 + profile.power();
    let rules = PiecewiseRules::new(order, alpha, power, !breaks.is_empty())?;
    Ok(2.0 * rules.integrate(&breaks, |s| profile.eval_reduced(s) * (1.0 + s).powf(alpha)))
}

/// Per-axis exponents `(power_j, alpha_j)` of the iterated simplex map:
/// axis `j` carries `u^{m_j} (1 - u)^{α + (n-1-j) + Σ_{i>j} m_i}`.
fn simplex_axis_exponents(e: &[f64], alpha: f64) -> Vec<(f64, f64)> {
    let n = e.len();
    (0..n)
        .map(|j| {
            let tail: f64 = e[j + 1..].iter().sum();
            (e[j], alpha + (n - 1 - j) as f64 + tail)
        })
        .collect()
}

fn index_exponents(m: &MultiIndex) -> Vec<f64> {
    m.entries().iter().map(|&x| f64::from(x)).collect()
}

/// Tensor Gauss rule on `Δ` for the weight `r^m (1 - Σ r)^α`: exact for
/// polynomial integrands of degree `<= 2N - 1` in each cube coordinate.
pub fn simplex_rule(m: &MultiIndex, w: &Weight, order: usize) -> Result<QuadratureRule> {
    w.check_index(m)?;
    check_order(order)?;
    tensor_simplex_rule(&index_exponents(m), w, order)
}

// Same map for real exponents `r^e`.
fn tensor_simplex_rule(e: &[f64], w: &Weight, order: usize) -> Result<QuadratureRule> {
    let n = e.len();
    let axes = simplex_axis_exponents(e, w.alpha())
        .into_iter()
        .map(|(p, a)| gauss_jacobi_rule(order, a, p))
        .collect::<Result<Vec<_>>>()?;
    let count = order.pow(n as u32);
    let mut nodes = Vec::with_capacity(count * n);
    let mut weights = Vec::with_capacity(count);
    let mut idx = vec![0usize; n];
    for _ in 0..count {
        let mut remaining = 1.0;
        let mut wt = 1.0;
        for j in 0..n {
            let u = axes[j].node(idx[j])[0];
            nodes.push(remaining * u);
            remaining *= 1.0 - u;
            wt *= axes[j].weights()[idx[j]];
        }
        weights.push(wt);
        for j in (0..n).rev() {
            idx[j] += 1;
            if idx[j] < order {
                break;
            }
            idx[j] = 0;
        }
    }
    Ok(QuadratureRule {
        dim: n,
        nodes,
        weights,
        domain: Domain::Simplex(n),
        exponents: WeightExponents {
            alpha: w.alpha(),
            power: 0.0,
        },
    })
}

/// `∫_Δ profile(√r) r^m (1 - Σ r)^α dr` over the simplex `Δ ⊂ Rⁿ`.
///
/// Smooth profiles use the tensor rule of [`simplex_rule`]. Profiles with
/// breakpoints are integrated axis by axis, splitting each inner axis where
/// the profile jumps given the outer coordinates.
pub fn integrate_simplex(
    profile: &dyn RadiiProfile,
    m: &MultiIndex,
    w: &Weight,
    order: usize,
) -> Result<f64> {
    w.check_index(m)?;
    check_order(order)?;
    let n = w.n();
    // s_j^{q_j} = r_j^{q_j / 2} joins the monomial
    let mut exps = index_exponents(m);
    for (j, e) in exps.iter_mut().enumerate() {
        *e += profile.axis_power(j, n) / 2.0;
    }
    if !profile.has_breakpoints() {
        let rule = tensor_simplex_rule(&exps, w, order)?;
        let mut radii = vec![0.0; n];
        return Ok(rule.integrate(|r| {
            for (s, &x) in radii.iter_mut().zip(r) {
                *s = x.sqrt();
            }
            profile.eval_reduced(&radii)
        }));
    }
    let rules = simplex_axis_exponents(&exps, w.alpha())
        .into_iter()
        .map(|(p, a)| PiecewiseRules::new(order, a, p, true))
        .collect::<Result<Vec<_>>>()?;
    let walker = SimplexWalker { profile, rules };
    let mut radii = vec![0.0; n];
    Ok(walker.level(0, 0.0, &mut radii))
}

struct SimplexWalker<'a> {
    profile: &'a dyn RadiiProfile,
    rules: Vec<PiecewiseRules>,
}

impl SimplexWalker<'_> {
    // `radii[..axis]` holds the outer radii, `prefix` their squared sum.
    fn level(&self, axis: usize, prefix: f64, radii: &mut [f64]) -> f64 {
        let remaining = 1.0 - prefix;
        let mut breaks = Vec::new();
        self.profile.breakpoints(axis, prefix, &mut breaks);
        for b in breaks.iter_mut() {
            *b /= remaining;
        }
        tidy_breaks(&mut breaks);
        let last = axis + 1 == radii.len();
        self.rules[axis].integrate(&breaks, |u| {
            let r = remaining * u;
            radii[axis] = r.sqrt();
            if last {
                self.profile.eval_reduced(radii)
            } else {
                self.level(axis + 1, prefix + r, radii)
            }
        })
    }
}

/// `∫_τ profile(s) Π s_j^{e_j} (1 - |s|²)^α Π s_j ds_j` over
/// `τ = {s ∈ R₊ⁿ : Σ s_j² < 1}`.
///
/// Uses the iterated map `s_j = R_j u_j`, `R_{j+1}² = R_j² (1 - u_j²)`, with
/// the factor `(1 - u_j)^{β_j}` absorbed into a Jacobi weight, so its nodes
/// are unrelated to those of [`integrate_simplex`].
pub fn integrate_tau_domain(
    profile: &dyn RadiiProfile,
    exponents: &[u32],
    w: &Weight,
    order: usize,
) -> Result<f64> {
    let n = w.n();
    if exponents.len() != n {
        return Err(Error::argument(format!(
            "exponent vector has length {} but n = {n}",
            exponents.len()
        )));
    }
    check_order(order)?;
    let pieces = profile.has_breakpoints();
    let exps: Vec<f64> = (0..n)
        .map(|j| f64::from(exponents[j]) + profile.axis_power(j, n))
        .collect();
    let betas: Vec<f64> = (0..n)
        .map(|j| w.alpha() + exps[j + 1..].iter().map(|&e| e / 2.0 + 1.0).sum::<f64>())
        .collect();
    // weight u^{e_j + 1} (1 - u)^{β_j}; (1 + u)^{β_j} stays in the integrand
    let rules = betas
        .iter()
        .zip(&exps)
        .map(|(&b, &e)| PiecewiseRules::new(order, b, e + 1.0, pieces))
        .collect::<Result<Vec<_>>>()?;
    let walker = TauWalker {
        profile,
        rules,
        betas,
    };
    let mut radii = vec![0.0; n];
    Ok(walker.level(0, 0.0, &mut radii))
}

struct TauWalker<'a> {
    profile: &'a dyn RadiiProfile,
    rules: Vec<PiecewiseRules>,
    betas: Vec<f64>,
}

impl TauWalker<'_> {
    fn level(&self, axis: usize, prefix: f64, radii: &mut [f64]) -> f64 {
        let rem_sq = 1.0 - prefix;
        let rem = rem_sq.sqrt();
        let mut breaks = Vec::new();
        if self.profile.has_breakpoints() {
            self.profile.breakpoints(axis, prefix, &mut breaks);
            breaks.retain(|&b| b > 0.0);
            for b in breaks.iter_mut() {
                *b = b.sqrt() / rem;
            }
            tidy_breaks(&mut breaks);
        }
        let beta = self.betas[axis];
        let last = axis + 1 == radii.len();
        self.rules[axis].integrate(&breaks, |u| {
            let s = rem * u;
            radii[axis] = s;
            let inner = if last {
                self.profile.eval_reduced(radii)
            } else {
                self.level(axis + 1, prefix + s * s, radii)
            };
            inner * (1.0 + u).powf(beta)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn w(alpha: f64, n: usize) -> Weight {
        Weight::new(alpha, n).unwrap()
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_node_midpoint() {
        let r = gauss_jacobi_rule(1, 0.0, 0.0).unwrap();
        assert_eq!(r.len(), 1);
        assert_relative_eq!(r.node(0)[0], 0.5, max_relative = 1e-15);
        assert_relative_eq!(r.weights()[0], 1.0, max_relative = 1e-15);
    }

    #[test]
    fn weights_sum_to_beta() {
        for n in 1..=20 {
            let r = gauss_jacobi_rule(n, 1.0, 2.0).unwrap();
            let s: f64 = r.weights().iter().sum();
            assert_relative_eq!(s, 1.0 / 12.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn integrates_quartic_against_sqrt_weight() {
        let r = gauss_jacobi_rule(5, 0.5, 0.0).unwrap();
        let got = r.integrate_1d(|x| x.powi(4));
        // B(5, 1.5) = 0.0738816738816738816...
        assert_relative_eq!(got, 0.073_881_673_881_673_88, max_relative = 1e-13);
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(matches!(
            gauss_jacobi_rule(4, -1.0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            gauss_jacobi_rule(4, 0.0, -1.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            gauss_jacobi_rule(0, 0.0, 0.0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn nodes_strictly_inside_and_sorted() {
        for (a, p) in [(-0.95, 0.0), (0.0, -0.95), (3.0, 40.0), (2.5, 405.0)] {
            let r = gauss_jacobi_rule(32, a, p).unwrap();
            let xs: Vec<f64> = r.nodes().map(|x| x[0]).collect();
            assert!(xs.iter().all(|&x| x > 0.0 && x < 1.0));
            assert!(xs.windows(2).all(|p| p[0] < p[1]));
            assert!(r.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn torus_rule_annihilates_frequencies() {
        let r = torus_angle_rule(4, 1).unwrap();
        let total: f64 = r.weights().iter().sum();
        assert_relative_eq!(total, std::f64::consts::TAU, max_relative = 1e-15);
        let re = r.integrate(|t| t[0].cos());
        let im = r.integrate(|t| t[0].sin());
        assert!(re.abs() < 1e-15 && im.abs() < 1e-15);

        let r = torus_angle_rule(8, 2).unwrap();
        let re = r.integrate(|t| (3.0 * t[0] - 2.0 * t[1]).cos());
        let im = r.integrate(|t| (3.0 * t[0] - 2.0 * t[1]).sin());
        assert!(re.abs() < 1e-13 && im.abs() < 1e-13);
        let total: f64 = r.weights().iter().sum();
        assert_relative_eq!(total, std::f64::consts::TAU.powi(2), max_relative = 1e-14);
    }

    #[test]
    fn radial_profile_constant_and_square() {
        for n in 1..=3 {
            for alpha in [-0.5, 0.0, 2.5] {
                let wt = w(alpha, n);
                for k in 0..6u32 {
                    let nk = (n as u32 + k) as f64;
                    let one = integrate_radial_profile(&|_s: f64| 1.0, k, &wt, 8).unwrap();
                    assert_relative_eq!(
                        one,
                        special::beta(nk, alpha + 1.0).unwrap(),
                        max_relative = 1e-13
                    );
                    let sq = integrate_radial_profile(&|s: f64| s * s, k, &wt, 8).unwrap();
                    assert_relative_eq!(
                        sq,
                        special::beta(nk + 1.0, alpha + 1.0).unwrap(),
                        max_relative = 1e-13
                    );
                }
            }
        }
    }

    struct Indicator(f64);

    impl RadialProfile for Indicator {
        fn eval(&self, s: f64) -> f64 {
            if s <= self.0 {
                1.0
            } else {
                0.0
            }
        }

        fn breakpoints(&self) -> Vec<f64> {
            vec![self.0]
        }
    }

    #[test]
    fn indicator_profile_gives_incomplete_beta() {
        // B(0.49; 3, 2) = I_0.49(3, 2) B(3, 2), I frozen from mpmath.betainc
        let wt = w(1.0, 2);
        let got = integrate_radial_profile(&Indicator(0.7), 1, &wt, 16).unwrap();
        let expected = 0.297_651_97 / 12.0;
        assert_relative_eq!(got, expected, max_relative = 1e-7);
        let rform = integrate_radial_profile_r_form(&Indicator(0.7), 1, &wt, 16).unwrap();
        assert_relative_eq!(got, rform, max_relative = 1e-13);
    }

    #[test]
    fn simplex_dirichlet_values() {
        let one = |_: &[f64]| 1.0;
        assert_relative_eq!(
            integrate_simplex(&one, &mi(&[0]), &w(0.0, 1), 4).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            integrate_simplex(&one, &mi(&[1, 0]), &w(0.0, 2), 4).unwrap(),
            1.0 / 6.0,
            max_relative = 1e-14
        );
        assert!(matches!(
            integrate_simplex(&one, &mi(&[1, 0]), &w(0.0, 3), 4),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn simplex_rule_nodes_inside() {
        let rule = simplex_rule(&mi(&[2, 0, 1]), &w(-0.5, 3), 6).unwrap();
        assert_eq!(rule.domain(), Domain::Simplex(3));
        for x in rule.nodes() {
            assert!(x.iter().all(|&r| r > 0.0));
            assert!(x.iter().sum::<f64>() < 1.0);
        }
    }

    #[test]
    fn simplex_one_dimensional_reduces_to_radial() {
        let f = |s: f64| (1.0 + s * s).recip() + s.powf(1.5);
        let g = |r: &[f64]| f(r[0]);
        for alpha in [-0.5, 0.0, 1.3] {
            let wt = w(alpha, 1);
            for k in 0..8 {
                let a = integrate_simplex(&g, &mi(&[k]), &wt, 24).unwrap();
                let b = integrate_radial_profile(&f, k, &wt, 24).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn tau_domain_matches_simplex_for_constant() {
        // 2^n ∫_τ s^{2m} (1-|s|²)^α Π s ds = ∫_Δ r^m (1-Σr)^α dr
        let one = |_: &[f64]| 1.0;
        for n in 1..=3 {
            let wt = w(0.5, n);
            for m in special::enumerate_degree(n, 4) {
                let e: Vec<u32> = m.entries().iter().map(|x| 2 * x).collect();
                let tau = integrate_tau_domain(&one, &e, &wt, 24).unwrap() * 2f64.powi(n as i32);
                let simplex = integrate_simplex(&one, &m, &wt, 8).unwrap();
                assert_relative_eq!(tau, simplex, max_relative = 1e-12);
            }
        }
    }
}
