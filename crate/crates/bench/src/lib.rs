//! Shared fixtures for the benchmarks.

use toeplitz_core::{Factor, SymbolSpec, Weight};

pub fn weight(alpha: f64, n: usize) -> Weight {
    Weight::new(alpha, n).expect("valid weight")
}

/// `a(s) = s^2`.
pub fn radial_square() -> SymbolSpec {
    SymbolSpec::radial(Factor::Pow(2.0)).expect("valid symbol")
}

/// A step on the first axis times a power on every other axis.
pub fn stepped(n: usize) -> SymbolSpec {
    let mut factors = vec![Factor::Step {
        threshold: 0.5,
        low: 1.0,
        high: 0.0,
    }];
    factors.extend((1..n).map(|_| Factor::Pow(1.0)));
    SymbolSpec::separately_radial(factors).expect("valid symbol")
}
