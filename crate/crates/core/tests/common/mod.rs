#![allow(dead_code)]

use toeplitz_core::{Factor, MultiIndex, SymbolSpec, Weight};

pub const ALPHAS: [f64; 4] = [-0.5, 0.0, 1.0, 2.5];

pub fn w(alpha: f64, n: usize) -> Weight {
    Weight::new(alpha, n).unwrap()
}

pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec()).unwrap()
}

pub fn radial(f: Factor) -> SymbolSpec {
    SymbolSpec::radial(f).unwrap()
}

pub fn seprad(fs: Vec<Factor>) -> SymbolSpec {
    SymbolSpec::separately_radial(fs).unwrap()
}

pub fn step(threshold: f64, low: f64, high: f64) -> Factor {
    Factor::Step {
        threshold,
        low,
        high,
    }
}

/// Radial profiles covering every family, jumps of both signs and a
/// fractional power.
pub fn radial_battery() -> Vec<SymbolSpec> {
    vec![
        radial(Factor::Const(1.0)),
        radial(Factor::Const(0.0)),
        radial(Factor::Pow(2.0)),
        radial(Factor::Pow(0.5)),
        radial(Factor::Pow(3.0)),
        radial(step(0.7, 1.0, 0.0)),
        radial(step(0.35, -1.0, 2.0)),
        radial(Factor::Poly(vec![1.0, -0.5, 0.25])),
    ]
}

/// The radial battery without the profiles that are not smooth in `|z|²`
/// (`pow(0.5)`, `pow(3)`). Those have a branch point at the origin, which
/// the multi-dimensional maps do not resolve to 1e-9 at default orders.
pub fn smooth_radial_battery() -> Vec<SymbolSpec> {
    radial_battery()
        .into_iter()
        .filter(|a| match a.radial_profile() {
            Some(Factor::Pow(p)) => p.fract() == 0.0 && (*p as u64).is_multiple_of(2),
            _ => true,
        })
        .collect()
}

/// The five separately radial shapes: constant, per-axis powers, step,
/// polynomial and a mixed product.
pub fn seprad_battery(n: usize) -> Vec<(&'static str, SymbolSpec)> {
    let tail = |f: Factor| -> Vec<Factor> { (1..n).map(|_| f.clone()).collect() };
    let mut powers = vec![Factor::Pow(2.0)];
    powers.extend((1..n).map(|j| Factor::Pow(j as f64 + 0.5)));
    let mut mixed = vec![step(0.5, 2.0, -1.0)];
    mixed.extend(
        [Factor::Pow(1.5), Factor::Poly(vec![1.0, -1.0])]
            .into_iter()
            .take(n - 1),
    );
    vec![
        (
            "constant",
            seprad([vec![Factor::Const(0.75)], tail(Factor::Const(1.0))].concat()),
        ),
        ("powers", seprad(powers)),
        (
            "step",
            seprad([vec![step(0.6, 1.0, 0.0)], tail(Factor::Const(1.0))].concat()),
        ),
        (
            "poly",
            seprad(
                [
                    vec![Factor::Poly(vec![1.0, -0.5])],
                    tail(Factor::Poly(vec![0.5, 0.5])),
                ]
                .concat(),
            ),
        ),
        ("mixed", seprad(mixed)),
    ]
}
