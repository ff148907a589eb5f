//! The invariant suite behind `toeplitz verify`.

use serde::{Deserialize, Serialize};
use statrs::function::beta::{beta_reg, ln_beta};
use statrs::function::gamma::ln_gamma;
use toeplitz_core::oracle::{
    fk_norm_oracle, monomial_norm_sq_oracle, MonteCarloOracle, OracleMatrix, PolarOracle,
};
use toeplitz_core::quadrature::{gauss_jacobi_rule, integrate_radial_profile, integrate_simplex};
use toeplitz_core::spectral::{
    compose_diagonal, eigenvalue_sequence, eigenvalue_sequence_separately_radial, gamma_radial,
    gamma_radial_r_form, gamma_separately_radial, gamma_separately_radial_tau, spectrum_summary,
};
use toeplitz_core::{special, Factor, MultiIndex, Result, SymbolSpec, TruncatedOperator, Weight};

use crate::config::RunConfig;

/// Closed form against closed form.
const EXACT: f64 = 1e-11;
/// Allowed change when doubling a quadrature order.
const REFINEMENT: f64 = 1e-10;
const MC_SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Measured worst-case deviation; `None` for counting checks.
    pub residual: Option<f64>,
    pub limit: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub symbol: Option<String>,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn measured(name: &str, residual: f64, limit: f64, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed: residual <= limit,
        residual: Some(residual),
        limit: Some(limit),
        detail: detail.into(),
    }
}

fn counted(name: &str, failures: usize, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed: failures == 0,
        residual: None,
        limit: None,
        detail: detail.into(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Tracks the worst value seen and where it occurred.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Worst {
            value: 0.0,
            at: String::new(),
        }
    }

    fn see(&mut self, v: f64, at: impl FnOnce() -> String) {
        // NaN is always the worst
        if v > self.value || (v.is_nan() && !self.value.is_nan()) {
            self.value = v;
            self.at = at();
        }
    }

    fn check(self, name: &str, limit: f64) -> Check {
        let detail = if self.at.is_empty() {
            String::new()
        } else {
            format!("worst at {}", self.at)
        };
        measured(name, self.value, limit, detail)
    }
}

fn step(threshold: f64, low: f64, high: f64) -> Factor {
    Factor::Step {
        threshold,
        low,
        high,
    }
}

fn radial_battery() -> Vec<SymbolSpec> {
    [
        Factor::Const(1.0),
        Factor::Pow(2.0),
        Factor::Pow(0.5),
        step(0.7, 1.0, 0.0),
        step(0.35, -1.0, 2.0),
        Factor::Poly(vec![1.0, -0.5, 0.25]),
    ]
    .into_iter()
    .map(|f| SymbolSpec::radial(f).expect("valid battery symbol"))
    .collect()
}

/// Radial profiles that are smooth functions of `|z|²`.
fn smooth_radial_battery() -> Vec<SymbolSpec> {
    [
        Factor::Const(1.0),
        Factor::Pow(2.0),
        step(0.7, 1.0, 0.0),
        Factor::Poly(vec![1.0, -0.5, 0.25]),
    ]
    .into_iter()
    .map(|f| SymbolSpec::radial(f).expect("valid battery symbol"))
    .collect()
}

fn seprad_battery(n: usize) -> Vec<SymbolSpec> {
    let rest = |f: Factor| -> Vec<Factor> { (1..n).map(|_| f.clone()).collect() };
    let mut powers = vec![Factor::Pow(2.0)];
    powers.extend((1..n).map(|j| Factor::Pow(j as f64 + 0.5)));
    let mut mixed = vec![step(0.5, 2.0, -1.0)];
    mixed.extend((1..n).map(|j| {
        if j % 2 == 1 {
            Factor::Pow(1.5)
        } else {
            Factor::Poly(vec![1.0, -1.0])
        }
    }));
    [
        [vec![Factor::Const(0.75)], rest(Factor::Const(1.0))].concat(),
        powers,
        [vec![step(0.6, 1.0, 0.0)], rest(Factor::Const(1.0))].concat(),
        [
            vec![Factor::Poly(vec![1.0, -0.5])],
            rest(Factor::Poly(vec![0.5, 0.5])),
        ]
        .concat(),
        mixed,
    ]
    .into_iter()
    .map(|fs| SymbolSpec::separately_radial(fs).expect("valid battery symbol"))
    .collect()
}

fn gauss_jacobi_exactness(cfg: &RunConfig) -> Result<Check> {
    let order = cfg.radial_n.min(20);
    let pairs = [
        (-0.9, -0.9),
        (-0.5, 0.0),
        (0.0, 0.0),
        (1.5, 2.25),
        (3.0, -0.5),
        (cfg.alpha, 0.0),
    ];
    let mut worst = Worst::new();
    for (alpha, power) in pairs {
        let rule = gauss_jacobi_rule(order, alpha, power)?;
        for d in 0..2 * order as i32 {
            let got = rule.integrate_1d(|x| x.powi(d));
            let want = ln_beta(power + f64::from(d) + 1.0, alpha + 1.0).exp();
            worst.see(rel(got, want), || {
                format!("alpha={alpha}, power={power}, d={d}")
            });
        }
    }
    Ok(worst.check("gauss_jacobi_exactness", 1e-12))
}

fn dirichlet(m: &MultiIndex, w: &Weight) -> f64 {
    let a1 = w.alpha() + 1.0;
    let top = m
        .entries()
        .iter()
        .map(|&k| ln_gamma(f64::from(k) + 1.0))
        .sum::<f64>()
        + ln_gamma(a1);
    (top - ln_gamma(f64::from(m.degree()) + w.n() as f64 + a1)).exp()
}

fn simplex_dirichlet(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let one = |_: &[f64]| 1.0;
    let mut worst = Worst::new();
    for m in special::enumerate_degree(cfg.n, cfg.max_degree.min(12)) {
        let got = integrate_simplex(&one, &m, &w, cfg.simplex_n)?;
        worst.see(rel(got, dirichlet(&m, &w)), || format!("m={m}"));
    }
    Ok(worst.check("simplex_dirichlet", 1e-10))
}

fn radial_refinement(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let smooth = |s: f64| 1.0 / (1.0 + s * s);
    let mut worst = Worst::new();
    for k in 0..=cfg.max_degree {
        let coarse = integrate_radial_profile(&smooth, k, &w, cfg.radial_n)?;
        let fine = integrate_radial_profile(&smooth, k, &w, 2 * cfg.radial_n)?;
        worst.see(rel(coarse, fine), || {
            format!("k={k}, N={} vs {}", cfg.radial_n, 2 * cfg.radial_n)
        });
    }
    Ok(worst.check("radial_refinement", REFINEMENT))
}

fn simplex_refinement(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let smooth = |s: &[f64]| 1.0 / (1.0 + s.iter().map(|x| x * x).sum::<f64>());
    let mut worst = Worst::new();
    for m in special::enumerate_degree(cfg.n, cfg.max_degree.min(2)) {
        let coarse = integrate_simplex(&smooth, &m, &w, cfg.simplex_n)?;
        let fine = integrate_simplex(&smooth, &m, &w, 2 * cfg.simplex_n)?;
        worst.see(rel(coarse, fine), || {
            format!("m={m}, N={} vs {}", cfg.simplex_n, 2 * cfg.simplex_n)
        });
    }
    Ok(worst.check("simplex_refinement", REFINEMENT))
}

fn identity_symbol(cfg: &RunConfig) -> Result<Check> {
    let one = SymbolSpec::separately_radial(vec![Factor::Const(1.0); cfg.n])?;
    let seq =
        eigenvalue_sequence_separately_radial(&one, &cfg.weight(), cfg.max_degree, cfg.simplex_n)?;
    let mut worst = Worst::new();
    for (m, v) in seq.iter() {
        worst.see((v - 1.0).abs(), || format!("m={m}"));
    }
    Ok(worst.check("identity_symbol", EXACT))
}

fn radial_square(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let a = SymbolSpec::radial(Factor::Pow(2.0))?;
    let mut worst = Worst::new();
    for k in 0..=cfg.max_degree.max(30) {
        let nk = (cfg.n as u32 + k) as f64;
        let got = gamma_radial(&a, k, &w, cfg.radial_n)?;
        worst.see(rel(got, nk / (nk + cfg.alpha + 1.0)), || format!("k={k}"));
    }
    Ok(worst.check("radial_square_closed_form", 1e-10))
}

fn radial_two_forms(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let mut worst = Worst::new();
    for a in radial_battery() {
        for k in 0..=cfg.max_degree {
            let s = gamma_radial(&a, k, &w, cfg.radial_n)?;
            let r = gamma_radial_r_form(&a, k, &w, cfg.radial_n)?;
            worst.see(rel(s, r), || format!("{a}, k={k}"));
        }
    }
    Ok(worst.check("radial_two_forms", EXACT))
}

fn tau_vs_simplex(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let mut symbols = seprad_battery(cfg.n);
    symbols.extend(smooth_radial_battery());
    let mut worst = Worst::new();
    for a in &symbols {
        for m in special::enumerate_degree(cfg.n, cfg.max_degree.min(4)) {
            let d = gamma_separately_radial(a, &m, &w, cfg.simplex_n)?;
            let t = gamma_separately_radial_tau(a, &m, &w, cfg.simplex_n)?;
            worst.see(rel(d, t), || format!("{a}, m={m}"));
        }
    }
    Ok(worst.check("tau_vs_simplex", 1e-9))
}

fn monomial_norms(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let mut worst = Worst::new();
    for m in special::enumerate_degree(cfg.n, cfg.max_degree.min(8)) {
        let got = monomial_norm_sq_oracle(&m, &w, cfg.oracle_radial_n, cfg.angular_m)?;
        let want = special::monomial_norm_sq(&m, &w)?;
        worst.see(rel(got, want), || format!("m={m}"));
    }
    Ok(worst.check("oracle_monomial_norms", cfg.tolerance))
}

fn fk_norms(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let mut worst = Worst::new();
    for k in 0..=cfg.max_degree.min(8) {
        let angular = cfg.angular_m.max(2 * k as usize + 1);
        let got = fk_norm_oracle(k, &w, cfg.oracle_radial_n, angular)?;
        let want = special::fk_norm_sq(k, &w);
        worst.see(rel(got, want), || format!("k={k}"));
    }
    Ok(worst.check("oracle_level_norms", cfg.tolerance))
}

fn incomplete_beta(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let a = SymbolSpec::radial(step(0.7, 1.0, 0.0))?;
    let mut worst = Worst::new();
    for k in 0..=cfg.max_degree.max(30) {
        let got = gamma_radial(&a, k, &w, cfg.radial_n)?;
        let want = beta_reg((cfg.n as u32 + k) as f64, cfg.alpha + 1.0, 0.49);
        worst.see((got - want).abs(), || format!("k={k}"));
    }
    Ok(worst.check("incomplete_beta_step", cfg.tolerance))
}

fn radial_constancy(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let top = cfg.max_degree.min(10);
    let mut worst = Worst::new();
    for a in radial_battery() {
        let seq = eigenvalue_sequence_separately_radial(&a, &w, top, cfg.simplex_n)?;
        for k in 0..=top {
            worst.see(seq.level_spread(k), || format!("{a}, k={k}"));
        }
    }
    Ok(worst.check("radial_constancy", 1e-8))
}

fn all_symbols(n: usize) -> Vec<SymbolSpec> {
    let mut symbols = seprad_battery(n);
    symbols.extend(radial_battery());
    symbols
}

fn boundedness_and_positivity(cfg: &RunConfig) -> Result<Vec<Check>> {
    let w = cfg.weight();
    let orders = cfg.orders();
    let mut excess = Worst::new();
    excess.value = f64::NEG_INFINITY;
    let mut negative = Worst::new();
    negative.value = f64::NEG_INFINITY;
    for a in all_symbols(cfg.n) {
        let seq = eigenvalue_sequence(&a, &w, cfg.max_degree, &orders)?;
        excess.see(seq.sup_abs() - a.bound(), || a.to_string());
        if a.is_nonnegative() {
            let lowest = seq.values.iter().copied().fold(f64::INFINITY, f64::min);
            negative.see(-lowest, || a.to_string());
        }
    }
    Ok(vec![
        excess.check("boundedness", 1e-12),
        negative.check("positivity", 1e-12),
    ])
}

fn monotone_square(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let a = SymbolSpec::radial(Factor::Pow(2.0))?;
    let values = (0..=200u32)
        .map(|k| gamma_radial(&a, k, &w, cfg.radial_n))
        .collect::<Result<Vec<_>>>()?;
    let drops = values.windows(2).filter(|p| !(p[1] > p[0])).count();
    let last = values[200];
    let gap = 1.0 - last;
    let expected_gap = (cfg.alpha + 1.0) / (cfg.n as f64 + 200.0 + cfg.alpha + 1.0);
    let mut check = counted(
        "monotone_square",
        drops + usize::from(rel(gap, expected_gap) > 1e-8),
        format!("{drops} non-increasing steps for k <= 200; 1 - value(200) = {gap:e}"),
    );
    check.residual = Some(rel(gap, expected_gap));
    check.limit = Some(1e-8);
    Ok(check)
}

fn multiplicities(cfg: &RunConfig) -> Result<Check> {
    let mut failures = 0;
    let mut cases = 0;
    for n in 1..=5usize {
        let all = special::enumerate_degree(n, 12);
        for k in 0..=12u32 {
            cases += 1;
            let brute = all.iter().filter(|m| m.degree() == k).count() as u64;
            if brute != special::multiplicity(n, k) {
                failures += 1;
            }
        }
    }
    let one = SymbolSpec::constant(1.0)?;
    let seq = eigenvalue_sequence(&one, &cfg.weight(), cfg.max_degree, &cfg.orders())?;
    for e in spectrum_summary(&seq)? {
        cases += 1;
        let brute = seq.basis.iter().filter(|m| m.degree() == e.degree).count() as u64;
        if brute != e.multiplicity {
            failures += 1;
        }
    }
    Ok(counted(
        "multiplicities",
        failures,
        format!("{failures} of {cases} counts differ from enumeration"),
    ))
}

fn diagonal_algebra(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let orders = cfg.orders();
    let seqs = all_symbols(cfg.n)
        .iter()
        .map(|a| eigenvalue_sequence(a, &w, cfg.max_degree.min(4), &orders))
        .collect::<Result<Vec<_>>>()?;
    let ops: Vec<_> = seqs.iter().map(TruncatedOperator::from_sequence).collect();
    let mut failures = 0;
    for i in 0..seqs.len() {
        for j in 0..seqs.len() {
            if ops[i].commutator(&ops[j])?.iter().any(|&x| x != 0.0) {
                failures += 1;
            }
            let composed = TruncatedOperator::from_sequence(&compose_diagonal(&seqs[i], &seqs[j])?);
            if composed.entries != ops[i].matmul(&ops[j])?.entries {
                failures += 1;
            }
        }
    }
    Ok(counted(
        "diagonal_algebra",
        failures,
        format!(
            "{failures} nonzero commutators or compose/product mismatches over {} pairs",
            seqs.len().pow(2)
        ),
    ))
}

fn polar_matrix(cfg: &RunConfig, a: &SymbolSpec, basis: &[MultiIndex]) -> Result<OracleMatrix> {
    PolarOracle::new(a, &cfg.weight(), cfg.oracle_radial_n, cfg.angular_m)?.matrix(basis)
}

/// Off-diagonal, Hermitian and diagonal-agreement checks on polar oracle
/// matrices of the given symbols.
fn oracle_structure(cfg: &RunConfig, symbols: &[SymbolSpec], prefix: &str) -> Result<Vec<Check>> {
    let basis = special::enumerate_degree(cfg.n, cfg.max_degree);
    let orders = cfg.orders();
    let mut offdiag = Worst::new();
    let mut hermitian = Worst::new();
    let mut diagonal = Worst::new();
    for a in symbols {
        let m = polar_matrix(cfg, a, &basis)?;
        let seq = eigenvalue_sequence(a, &cfg.weight(), cfg.max_degree, &orders)?;
        for (i, mi) in basis.iter().enumerate() {
            for (j, mj) in basis.iter().enumerate() {
                let v = m.values[(i, j)];
                if i == j {
                    let allowed = cfg.tolerance.max(MC_SIGMAS * m.errors[(i, i)]);
                    diagonal.see((v.re - seq.values[i]).abs() / allowed, || {
                        format!("{a}, m={mi}")
                    });
                    diagonal.see(v.im.abs() / cfg.tolerance, || {
                        format!("{a}, m={mi} (imaginary part)")
                    });
                } else {
                    offdiag.see(v.norm(), || format!("{a}, ({mi}, {mj})"));
                }
                hermitian.see((v - m.values[(j, i)].conj()).norm(), || {
                    format!("{a}, ({mi}, {mj})")
                });
            }
        }
    }
    let mut agreement = diagonal.check(&format!("{prefix}oracle_matches_closed_form"), 1.0);
    agreement.detail = format!(
        "residual is |oracle - γ| / max(tolerance, 4 error estimates); {}",
        agreement.detail
    );
    Ok(vec![
        offdiag.check(&format!("{prefix}off_diagonal"), cfg.tolerance),
        hermitian.check(&format!("{prefix}hermitian_symmetry"), 1e-12),
        agreement,
    ])
}

fn monte_carlo_diagonality(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let basis = special::enumerate_degree(cfg.n, cfg.max_degree.min(4));
    let a = &seprad_battery(cfg.n)[4];
    let m = MonteCarloOracle::new(a, &w, cfg.mc_samples, cfg.seed)?.matrix(&basis)?;
    let mut worst = Worst::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j {
                worst.see(m.values[(i, j)].norm() / m.errors[(i, j)], || {
                    format!("{a}, ({}, {})", basis[i], basis[j])
                });
            }
        }
    }
    let mut check = worst.check("monte_carlo_off_diagonal", MC_SIGMAS);
    check.detail = format!("residual in standard errors; {}", check.detail);
    Ok(check)
}

/// Fixed 30-case battery `(symbol, m, m2, α)` for polar vs Monte Carlo.
pub fn cross_oracle_cases() -> Vec<(SymbolSpec, MultiIndex, MultiIndex, f64)> {
    let mi = |v: &[u32]| MultiIndex::new(v.to_vec()).expect("non-empty");
    let symbols = [
        SymbolSpec::radial(Factor::Pow(2.0)),
        SymbolSpec::radial(step(0.7, 1.0, 0.0)),
        SymbolSpec::separately_radial(vec![step(0.6, 1.0, 0.25), Factor::Pow(1.0)]),
        SymbolSpec::separately_radial(vec![Factor::Poly(vec![1.0, -0.5]), step(0.5, 2.0, -1.0)]),
        SymbolSpec::separately_radial(vec![Factor::Pow(0.5), Factor::Const(1.0)]),
    ];
    let pairs = [
        (mi(&[0, 0]), mi(&[0, 0])),
        (mi(&[1, 0]), mi(&[1, 0])),
        (mi(&[1, 2]), mi(&[1, 2])),
        (mi(&[1, 0]), mi(&[0, 1])),
        (mi(&[2, 1]), mi(&[1, 1])),
        (mi(&[3, 0]), mi(&[1, 2])),
    ];
    let alphas = [-0.5, 0.0, 1.0, 2.5, 0.5];
    let mut out = Vec::new();
    for (i, s) in symbols.into_iter().enumerate() {
        let s = s.expect("valid battery symbol");
        for (m, m2) in pairs.iter().cloned() {
            out.push((s.clone(), m, m2, alphas[i]));
        }
    }
    out
}

fn cross_oracle(cfg: &RunConfig) -> Result<Check> {
    let mut worst = Worst::new();
    let cases = cross_oracle_cases();
    let mut current: Option<(String, f64, MonteCarloOracle)> = None;
    for (a, m, m2, alpha) in &cases {
        let w = Weight::new(*alpha, 2)?;
        let key = a.to_string();
        if current
            .as_ref()
            .is_none_or(|(k, al, _)| *k != key || al != alpha)
        {
            current = Some((
                key,
                *alpha,
                MonteCarloOracle::new(a, &w, cfg.mc_samples, cfg.seed)?,
            ));
        }
        let mc = current.as_ref().expect("set above").2.entry(m, m2)?;
        let angular = cfg.angular_m.max(8);
        let polar = PolarOracle::new(a, &w, cfg.oracle_radial_n, angular)?.inner_product(m, m2)?;
        let sigmas = (mc.value - polar.value).norm() / mc.error_estimate;
        worst.see(sigmas, || format!("{a}, m={m}, m2={m2}, alpha={alpha}"));
    }
    let mut check = worst.check("cross_oracle", MC_SIGMAS);
    check.detail = format!(
        "{} cases, residual in Monte Carlo standard errors; {}",
        cases.len(),
        check.detail
    );
    Ok(check)
}

fn determinism(cfg: &RunConfig) -> Result<Check> {
    let w = cfg.weight();
    let a = &seprad_battery(cfg.n)[2];
    let m = MultiIndex::zeros(cfg.n);
    let x = MonteCarloOracle::new(a, &w, cfg.mc_samples.min(20_000), cfg.seed)?.entry(&m, &m)?;
    let y = MonteCarloOracle::new(a, &w, cfg.mc_samples.min(20_000), cfg.seed)?.entry(&m, &m)?;
    let same_value = x.value.re.to_bits() == y.value.re.to_bits()
        && x.value.im.to_bits() == y.value.im.to_bits();
    let mut failures = usize::from(!same_value);
    failures += usize::from(x.error_estimate.to_bits() != y.error_estimate.to_bits());
    let s1 = eigenvalue_sequence(a, &w, cfg.max_degree.min(4), &cfg.orders())?;
    let s2 = eigenvalue_sequence(a, &w, cfg.max_degree.min(4), &cfg.orders())?;
    failures += usize::from(s1 != s2);
    Ok(counted(
        "determinism",
        failures,
        format!("{failures} repeated evaluations differed"),
    ))
}

/// Symbol-specific checks added when `--symbol` is given.
fn symbol_checks(cfg: &RunConfig, a: &SymbolSpec) -> Result<Vec<Check>> {
    let seq = eigenvalue_sequence(a, &cfg.weight(), cfg.max_degree, &cfg.orders())?;
    let mut out = vec![measured(
        "symbol_boundedness",
        seq.sup_abs() - a.bound(),
        1e-12,
        format!("sup |γ| = {:e}, bound = {:e}", seq.sup_abs(), a.bound()),
    )];
    out.extend(oracle_structure(cfg, std::slice::from_ref(a), "symbol_")?);
    if a.is_radial() {
        let mut spread = Worst::new();
        let through_simplex =
            eigenvalue_sequence_separately_radial(a, &cfg.weight(), cfg.max_degree, cfg.simplex_n)?;
        for k in 0..=cfg.max_degree {
            spread.see(through_simplex.level_spread(k), || format!("k={k}"));
        }
        out.push(spread.check("symbol_radial_constancy", 1e-8));
    }
    Ok(out)
}

type CheckFn = fn(&RunConfig) -> Result<Vec<Check>>;

fn one(f: fn(&RunConfig) -> Result<Check>) -> impl Fn(&RunConfig) -> Result<Vec<Check>> {
    move |cfg| f(cfg).map(|c| vec![c])
}

fn failed(name: &str, err: &toeplitz_core::Error) -> Check {
    Check {
        name: name.into(),
        passed: false,
        residual: None,
        limit: None,
        detail: err.to_string(),
    }
}

type SingleCheck = fn(&RunConfig) -> Result<Check>;

/// Runs every check; errors inside a check turn into a failed entry.
pub fn run(cfg: &RunConfig, symbol: Option<&SymbolSpec>) -> Report {
    let singles: [(&str, SingleCheck); 18] = [
        ("gauss_jacobi_exactness", gauss_jacobi_exactness),
        ("simplex_dirichlet", simplex_dirichlet),
        ("radial_refinement", radial_refinement),
        ("simplex_refinement", simplex_refinement),
        ("identity_symbol", identity_symbol),
        ("radial_square_closed_form", radial_square),
        ("radial_two_forms", radial_two_forms),
        ("tau_vs_simplex", tau_vs_simplex),
        ("oracle_monomial_norms", monomial_norms),
        ("oracle_level_norms", fk_norms),
        ("incomplete_beta_step", incomplete_beta),
        ("radial_constancy", radial_constancy),
        ("monotone_square", monotone_square),
        ("multiplicities", multiplicities),
        ("diagonal_algebra", diagonal_algebra),
        ("monte_carlo_off_diagonal", monte_carlo_diagonality),
        ("cross_oracle", cross_oracle),
        ("determinism", determinism),
    ];
    let groups: [(&str, CheckFn); 3] = [
        ("boundedness", boundedness_and_positivity),
        ("separately_radial_off_diagonal", |cfg| {
            oracle_structure(cfg, &seprad_battery(cfg.n), "separately_radial_")
        }),
        ("radial_off_diagonal", |cfg| {
            oracle_structure(cfg, &smooth_radial_battery()[1..], "radial_")
        }),
    ];
    let mut checks = Vec::new();
    for (name, f) in singles {
        match one(f)(cfg) {
            Ok(c) => checks.extend(c),
            Err(e) => checks.push(failed(name, &e)),
        }
    }
    for (name, f) in groups {
        match f(cfg) {
            Ok(c) => checks.extend(c),
            Err(e) => checks.push(failed(name, &e)),
        }
    }
    if let Some(a) = symbol {
        match symbol_checks(cfg, a) {
            Ok(c) => checks.extend(c),
            Err(e) => checks.push(failed("symbol", &e)),
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Report {
        config: cfg.clone(),
        symbol: symbol.map(|a| a.to_string()),
        passed,
        checks,
    }
}
