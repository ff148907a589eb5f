mod common;

use common::*;
use proptest::prelude::*;
use statrs::function::beta::ln_beta as ref_ln_beta;
use statrs::function::gamma::ln_gamma as ref_ln_gamma;
use toeplitz_core::quadrature::{gauss_jacobi_rule, simplex_rule, DEFAULT_ORDER};
use toeplitz_core::special::{self, enumerate_degree};
use toeplitz_core::spectral::{
    eigenvalue_sequence, gamma_radial, gamma_separately_radial, gamma_separately_radial_tau,
};
use toeplitz_core::{Factor, MultiIndex, Orders, SymbolSpec};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn exponent() -> impl Strategy<Value = f64> {
    (-0.9f64..=3.0).prop_map(|x| (x * 64.0).round() / 64.0)
}

fn multi_index(n: usize, max_degree: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=max_degree, n)
        .prop_filter("degree bound", move |v| v.iter().sum::<u32>() <= max_degree)
        .prop_map(|v| MultiIndex::new(v).unwrap())
}

fn factor() -> impl Strategy<Value = Factor> {
    prop_oneof![
        (0.0f64..2.0).prop_map(Factor::Const),
        (0.0f64..3.0).prop_map(Factor::Pow),
        (0.1f64..0.9, 0.0f64..2.0, 0.0f64..2.0).prop_map(|(threshold, low, high)| Factor::Step {
            threshold,
            low,
            high
        }),
        prop::collection::vec(0.0f64..1.0, 1..4).prop_map(Factor::Poly),
    ]
}

fn smooth_factor() -> impl Strategy<Value = Factor> {
    prop_oneof![
        (0.0f64..2.0).prop_map(Factor::Const),
        (0u32..3).prop_map(|k| Factor::Pow(2.0 * f64::from(k))),
        prop::collection::vec(-1.0f64..1.0, 1..4).prop_map(Factor::Poly),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn gauss_jacobi_is_exact_to_degree_2n_minus_1(
        alpha in exponent(),
        power in exponent(),
        order in 1usize..=20,
        frac in 0.0f64..=1.0,
    ) {
        let d = ((2 * order - 1) as f64 * frac).round() as i32;
        let rule = gauss_jacobi_rule(order, alpha, power).unwrap();
        let got = rule.integrate_1d(|x| x.powi(d));
        let want = ref_ln_beta(power + f64::from(d) + 1.0, alpha + 1.0).exp();
        prop_assert!(rel(got, want) <= 1e-12, "N={order} d={d}: {got} vs {want}");
    }

    #[test]
    fn simplex_rule_reproduces_dirichlet_moments(
        m in (1usize..=4).prop_flat_map(|n| multi_index(n, 12)),
        alpha in exponent(),
    ) {
        let n = m.dim();
        let wt = w(alpha, n);
        let rule = simplex_rule(&m, &wt, DEFAULT_ORDER).unwrap();
        let got: f64 = rule.weights().iter().sum();
        // ∫_Δ r^m (1-|r|)^α dr = m! Γ(α+1) / Γ(n+|m|+α+1)
        let ln_want = m.entries().iter().map(|&e| ref_ln_gamma(f64::from(e) + 1.0)).sum::<f64>()
            + ref_ln_gamma(alpha + 1.0)
            - ref_ln_gamma(n as f64 + f64::from(m.degree()) + alpha + 1.0);
        prop_assert!(rel(got, ln_want.exp()) <= 1e-10, "{m}: {got} vs {}", ln_want.exp());
    }

    #[test]
    fn one_dimension_reduces_to_the_radial_integral(
        f in factor(),
        alpha in exponent(),
        k in 0u32..=10,
    ) {
        let wt = w(alpha, 1);
        let a = radial(f.clone());
        let b = seprad(vec![f]);
        let via_radial = gamma_radial(&a, k, &wt, DEFAULT_ORDER).unwrap();
        let via_simplex = gamma_separately_radial(&b, &mi(&[k]), &wt, DEFAULT_ORDER).unwrap();
        let via_tau = gamma_separately_radial_tau(&b, &mi(&[k]), &wt, DEFAULT_ORDER).unwrap();
        prop_assert!((via_radial - via_simplex).abs() <= 1e-12 * via_radial.abs().max(1.0));
        prop_assert!((via_radial - via_tau).abs() <= 1e-12 * via_radial.abs().max(1.0));
    }

    #[test]
    fn refinement_changes_little_past_order_24(
        f in smooth_factor(),
        g in smooth_factor(),
        alpha in exponent(),
        order in 24usize..=40,
        m in multi_index(2, 8),
    ) {
        let a = seprad(vec![f, g]);
        let wt = w(alpha, 2);
        let lo = gamma_separately_radial(&a, &m, &wt, order).unwrap();
        let hi = gamma_separately_radial(&a, &m, &wt, 2 * order).unwrap();
        prop_assert!((lo - hi).abs() <= 1e-10 * hi.abs().max(1.0), "{lo} vs {hi}");
    }

    #[test]
    fn nonnegative_symbols_give_nonnegative_values_bounded_by_sup(
        fs in prop::collection::vec(factor(), 2),
        alpha in exponent(),
    ) {
        let a = seprad(fs);
        let seq = eigenvalue_sequence(&a, &w(alpha, 2), 6, &Orders::default()).unwrap();
        let bound = a.bound();
        for (m, v) in seq.iter() {
            prop_assert!(v >= -1e-12, "{m}: {v}");
            prop_assert!(v <= bound + 1e-12, "{m}: {v} > {bound}");
        }
    }

    #[test]
    fn level_norms_sum_over_the_level(n in 1usize..=4, alpha in exponent(), k in 0u32..=8) {
        // monomials are orthogonal, so ‖Σ √binom(k,m) z^m‖² = Σ binom(k,m) ‖z^m‖²
        let wt = w(alpha, n);
        let sum: f64 = special::enumerate_level(n, k)
            .iter()
            .map(|m| special::multinomial(k, m).unwrap() * special::monomial_norm_sq(m, &wt).unwrap())
            .sum();
        let want = special::fk_norm_sq(k, &wt);
        prop_assert!(rel(sum, want) <= 1e-12, "{sum} vs {want}");
    }
}

#[test]
fn square_profile_is_strictly_increasing_to_one() {
    let a = radial(Factor::Pow(2.0));
    for alpha in ALPHAS {
        for n in 1..=3 {
            let wt = w(alpha, n);
            let mut prev = 0.0;
            for k in 0..=200 {
                let g = gamma_radial(&a, k, &wt, DEFAULT_ORDER).unwrap();
                let want = (n + k as usize) as f64 / (n as f64 + f64::from(k) + alpha + 1.0);
                assert!(
                    rel(g, want) <= 1e-12,
                    "n={n} α={alpha} k={k}: {g} vs {want}"
                );
                assert!(g > prev && g < 1.0);
                prev = g;
            }
        }
    }
}

#[test]
fn radial_symbols_are_constant_on_levels() {
    for alpha in ALPHAS {
        for n in 2..=3 {
            let wt = w(alpha, n);
            for a in smooth_radial_battery() {
                let seq = eigenvalue_sequence(&a, &wt, 6, &Orders::default()).unwrap();
                let via_simplex =
                    |m: &MultiIndex| gamma_separately_radial(&a, m, &wt, DEFAULT_ORDER).unwrap();
                for m in enumerate_degree(n, 6) {
                    let per = seq.per_degree.as_ref().unwrap()[m.degree() as usize];
                    assert!((via_simplex(&m) - per).abs() <= 1e-9, "{a} {m}");
                }
            }
        }
    }
}

#[test]
fn documented_examples() {
    let wt = w(0.0, 2);
    let sq = seprad(vec![Factor::Pow(2.0), Factor::Const(1.0)]);
    let g = |m: &[u32]| gamma_separately_radial(&sq, &mi(m), &wt, DEFAULT_ORDER).unwrap();
    assert!((g(&[0, 0]) - 1.0 / 3.0).abs() < 1e-13);
    assert!((g(&[1, 0]) - 0.5).abs() < 1e-13);
    assert!((g(&[0, 1]) - 0.25).abs() < 1e-13);

    let r = radial(Factor::Pow(2.0));
    let w1 = w(0.0, 1);
    for (k, want) in [(0, 0.5), (1, 2.0 / 3.0), (2, 0.75)] {
        assert!((gamma_radial(&r, k, &w1, DEFAULT_ORDER).unwrap() - want).abs() < 1e-14);
    }

    let one = SymbolSpec::constant(1.0).unwrap();
    for alpha in ALPHAS {
        let seq = eigenvalue_sequence(&one, &w(alpha, 3), 4, &Orders::default()).unwrap();
        assert!(seq.values.iter().all(|v| (v - 1.0).abs() < 1e-13));
    }
}
