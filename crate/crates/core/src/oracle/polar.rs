use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{Effort, OracleMatrix, OracleMethod, OracleResult};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_tau_domain, torus_angle_rule, QuadratureRule, RadiiProfile};
use crate::special::{self, check_same_dim, MultiIndex, Weight};
use crate::spectral::SymbolSpec;

struct Unit;

impl RadiiProfile for Unit {
    fn eval(&self, _radii: &[f64]) -> f64 {
        1.0
    }
}

/// Radial integral at the working order and at half of it.
#[derive(Debug, Clone, Copy)]
struct Radial {
    fine: f64,
    coarse: f64,
}

/// Polar-coordinate integration of `a z^m \bar z^{m'} (1 - |z|²)^α` over `Bⁿ`.
pub struct PolarOracle<'a> {
    symbol: &'a SymbolSpec,
    weight: Weight,
    radial_order: usize,
    angular_order: usize,
    angles: QuadratureRule,
}

impl<'a> PolarOracle<'a> {
    pub fn new(
        symbol: &'a SymbolSpec,
        weight: &Weight,
        radial_order: usize,
        angular_order: usize,
    ) -> Result<Self> {
        symbol.check_dim(weight.n())?;
        if radial_order == 0 {
            return Err(Error::argument("oracle radial order must be at least 1"));
        }
        let angles = torus_angle_rule(angular_order, weight.n())?;
        Ok(PolarOracle {
            symbol,
            weight: *weight,
            radial_order,
            angular_order,
            angles,
        })
    }

    fn effort(&self) -> Effort {
        Effort::Polar {
            radial_order: self.radial_order,
            angular_order: self.angular_order,
        }
    }

    /// `Σ_θ w e^{i q·θ}` over the torus rule.
    fn angular(&self, q: &[i64]) -> Result<Complex64> {
        let worst = q.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
        if worst as usize >= self.angular_order {
            return Err(Error::argument(format!(
                "angular order {} cannot resolve frequency {worst}; need more than {worst} nodes",
                self.angular_order
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (theta, w) in self.angles.nodes().zip(self.angles.weights()) {
            let phase: f64 = q.iter().zip(theta).map(|(&k, &t)| k as f64 * t).sum();
            acc += *w * Complex64::new(phase.cos(), phase.sin());
        }
        Ok(acc)
    }

    fn radial(&self, profile: &dyn RadiiProfile, exps: &[u32]) -> Result<Radial> {
        let fine = integrate_tau_domain(profile, exps, &self.weight, self.radial_order)?;
        let coarse =
            integrate_tau_domain(profile, exps, &self.weight, (self.radial_order / 2).max(1))?;
        Ok(Radial { fine, coarse })
    }

    fn frequencies(m: &MultiIndex, m2: &MultiIndex) -> (Vec<i64>, Vec<u32>) {
        let q = m
            .entries()
            .iter()
            .zip(m2.entries())
            .map(|(&a, &b)| i64::from(a) - i64::from(b));
        let e = m.entries().iter().zip(m2.entries()).map(|(&a, &b)| a + b);
        (q.collect(), e.collect())
    }

    fn doubled(m: &MultiIndex) -> Vec<u32> {
        m.entries().iter().map(|x| 2 * x).collect()
    }

    fn check(&self, m: &MultiIndex, m2: &MultiIndex) -> Result<()> {
        self.weight.check_index(m)?;
        check_same_dim(m, m2)
    }

    fn assemble(
        &self,
        angular: Complex64,
        num: Radial,
        zero_angle: Complex64,
        norm1: Radial,
        norm2: Radial,
    ) -> OracleResult {
        let value_at = |num: f64, n1: f64, n2: f64| angular * num / (zero_angle * (n1 * n2).sqrt());
        let fine = value_at(num.fine, norm1.fine, norm2.fine);
        let coarse = value_at(num.coarse, norm1.coarse, norm2.coarse);
        OracleResult {
            value: fine,
            error_estimate: (fine - coarse).norm() + 8.0 * f64::EPSILON * fine.norm(),
            method: OracleMethod::PolarQuadrature,
            effort: self.effort(),
        }
    }

    /// Normalized inner product `⟨a e_m, e_{m2}⟩_α`.
    pub fn inner_product(&self, m: &MultiIndex, m2: &MultiIndex) -> Result<OracleResult> {
        self.check(m, m2)?;
        let (q, e) = Self::frequencies(m, m2);
        let zeros = vec![0i64; self.weight.n()];
        Ok(self.assemble(
            self.angular(&q)?,
            self.radial(self.symbol, &e)?,
            self.angular(&zeros)?,
            self.radial(&Unit, &Self::doubled(m))?,
            self.radial(&Unit, &Self::doubled(m2))?,
        ))
    }

    /// `⟨a z^m, z^{m2}⟩_α`, normalized by the integrated total mass of `v_α`.
    pub fn monomial_inner_product(&self, m: &MultiIndex, m2: &MultiIndex) -> Result<OracleResult> {
        self.check(m, m2)?;
        let g = self.monomial_gram(std::slice::from_ref(m2), std::slice::from_ref(m))?;
        Ok(OracleResult {
            value: g.values[(0, 0)],
            error_estimate: g.errors[(0, 0)],
            method: OracleMethod::PolarQuadrature,
            effort: self.effort(),
        })
    }

    /// `⟨a z^{cols_j}, z^{rows_i}⟩_α` for all pairs, each divided by the
    /// integrated mass of `v_α`.
    pub fn monomial_gram(&self, rows: &[MultiIndex], cols: &[MultiIndex]) -> Result<OracleMatrix> {
        for m in rows.iter().chain(cols) {
            self.weight.check_index(m)?;
        }
        let n = self.weight.n();
        let (radial, angular) = self.tables(rows, cols)?;
        let mass = self.radial(&Unit, &vec![0; n])?;
        let zero = angular[&vec![0i64; n]];
        let mut values = DMatrix::zeros(rows.len(), cols.len());
        let mut errors = DMatrix::zeros(rows.len(), cols.len());
        for (i, row) in rows.iter().enumerate() {
            for (j, col) in cols.iter().enumerate() {
                let (q, e) = Self::frequencies(col, row);
                let num = radial[&e];
                let ang = angular[&q] / zero;
                let fine = ang * (num.fine / mass.fine);
                let coarse = ang * (num.coarse / mass.coarse);
                values[(i, j)] = fine;
                errors[(i, j)] = (fine - coarse).norm() + 8.0 * f64::EPSILON * fine.norm();
            }
        }
        Ok(OracleMatrix { values, errors })
    }

    /// Radial integrals of the symbol for every `col + row` and angular sums
    /// for every `col - row`.
    #[allow(clippy::type_complexity)]
    fn tables(
        &self,
        rows: &[MultiIndex],
        cols: &[MultiIndex],
    ) -> Result<(HashMap<Vec<u32>, Radial>, HashMap<Vec<i64>, Complex64>)> {
        let mut sums: Vec<Vec<u32>> = Vec::new();
        let mut diffs: Vec<Vec<i64>> = vec![vec![0; self.weight.n()]];
        for row in rows {
            for col in cols {
                let (q, e) = Self::frequencies(col, row);
                sums.push(e);
                diffs.push(q);
            }
        }
        sums.sort();
        sums.dedup();
        diffs.sort();
        diffs.dedup();
        let radial = sums
            .par_iter()
            .map(|e| self.radial(self.symbol, e).map(|r| (e.clone(), r)))
            .collect::<Result<_>>()?;
        let angular = diffs
            .par_iter()
            .map(|q| self.angular(q).map(|v| (q.clone(), v)))
            .collect::<Result<_>>()?;
        Ok((radial, angular))
    }

    /// All entries `⟨a e_{m_j}, e_{m_i}⟩_α` for a basis, row `i`, column `j`.
    ///
    /// Radial integrals are shared between entries with equal `m + m'` and
    /// angular sums between entries with equal `m - m'`.
    pub fn matrix(&self, basis: &[MultiIndex]) -> Result<OracleMatrix> {
        for m in basis {
            self.weight.check_index(m)?;
        }
        let dim = basis.len();
        let n = self.weight.n();
        let (radial, angular) = self.tables(basis, basis)?;
        let norms: Vec<Radial> = basis
            .par_iter()
            .map(|m| self.radial(&Unit, &Self::doubled(m)))
            .collect::<Result<_>>()?;
        let zero = angular[&vec![0i64; n]];

        let mut values = DMatrix::zeros(dim, dim);
        let mut errors = DMatrix::zeros(dim, dim);
        for (i, row) in basis.iter().enumerate() {
            for (j, col) in basis.iter().enumerate() {
                // ⟨a e_col, e_row⟩ integrates a z^col \bar z^row
                let (q, e) = Self::frequencies(col, row);
                let r = self.assemble(angular[&q], radial[&e], zero, norms[j], norms[i]);
                values[(i, j)] = r.value;
                errors[(i, j)] = r.error_estimate;
            }
        }
        Ok(OracleMatrix { values, errors })
    }
}

/// `⟨a e_m, e_{m2}⟩_α` by polar quadrature.
pub fn inner_product_polar(
    a: &SymbolSpec,
    m: &MultiIndex,
    m2: &MultiIndex,
    w: &Weight,
    radial_order: usize,
    angular_order: usize,
) -> Result<OracleResult> {
    PolarOracle::new(a, w, radial_order, angular_order)?.inner_product(m, m2)
}

/// `‖z^m‖²_α` as the ratio of two integrated polar moments.
pub fn monomial_norm_sq_oracle(
    m: &MultiIndex,
    w: &Weight,
    radial_order: usize,
    angular_order: usize,
) -> Result<f64> {
    let one = SymbolSpec::constant(1.0)?;
    let r = PolarOracle::new(&one, w, radial_order, angular_order)?.monomial_inner_product(m, m)?;
    Ok(r.value.re)
}

/// `‖f_k‖²_α` for `f_k = Σ_{|m|=k} √binom(k,m) z^m`, summing every integrated
/// cross term `⟨z^m, z^{m'}⟩_α` (the off-diagonal ones come out as quadrature
/// noise rather than being dropped).
pub fn fk_norm_oracle(
    k: u32,
    w: &Weight,
    radial_order: usize,
    angular_order: usize,
) -> Result<f64> {
    let one = SymbolSpec::constant(1.0)?;
    let oracle = PolarOracle::new(&one, w, radial_order, angular_order)?;
    let level = special::enumerate_level(w.n(), k);
    let coeffs = level
        .iter()
        .map(|m| special::multinomial(k, m).map(f64::sqrt))
        .collect::<Result<Vec<_>>>()?;
    let gram = oracle.monomial_gram(&level, &level)?;
    let mut total = Complex64::new(0.0, 0.0);
    for (i, ci) in coeffs.iter().enumerate() {
        for (j, cj) in coeffs.iter().enumerate() {
            total += ci * cj * gram.values[(i, j)];
        }
    }
    Ok(total.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Factor;
    use approx::assert_relative_eq;

    fn w(alpha: f64, n: usize) -> Weight {
        Weight::new(alpha, n).unwrap()
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unit_symbol_is_orthonormal() {
        let one = SymbolSpec::constant(1.0).unwrap();
        let wt = w(0.3, 2);
        let d = inner_product_polar(&one, &mi(&[2, 1]), &mi(&[2, 1]), &wt, 16, 8).unwrap();
        assert!((d.value - 1.0).norm() < 1e-13);
        let o = inner_product_polar(&one, &mi(&[2, 1]), &mi(&[1, 2]), &wt, 16, 8).unwrap();
        assert!(o.value.norm() < 1e-12);
    }

    #[test]
    fn radial_square_on_first_unit_vector() {
        // (n + k)/(n + k + α + 1) with n = 2, k = 1, α = 0
        let a = SymbolSpec::radial(Factor::Pow(2.0)).unwrap();
        let r = inner_product_polar(&a, &mi(&[1, 0]), &mi(&[1, 0]), &w(0.0, 2), 24, 6).unwrap();
        assert_relative_eq!(r.value.re, 0.75, max_relative = 1e-12);
        assert!(r.value.im.abs() < 1e-14);
    }

    #[test]
    fn angular_order_too_small() {
        let one = SymbolSpec::constant(1.0).unwrap();
        assert!(matches!(
            inner_product_polar(&one, &mi(&[3, 0]), &mi(&[0, 0]), &w(0.0, 2), 8, 3),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn norms_match_closed_forms() {
        let wt = w(1.0, 2);
        assert_relative_eq!(
            monomial_norm_sq_oracle(&mi(&[1, 1]), &w(0.0, 2), 16, 4).unwrap(),
            1.0 / 12.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            fk_norm_oracle(0, &wt, 16, 4).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            fk_norm_oracle(1, &w(0.0, 1), 16, 4).unwrap(),
            0.5,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            fk_norm_oracle(2, &wt, 16, 6).unwrap(),
            0.3,
            max_relative = 1e-12
        );
    }

    #[test]
    fn hermitian_symmetry() {
        let a = SymbolSpec::separately_radial(vec![
            Factor::Step {
                threshold: 0.6,
                low: 1.0,
                high: -0.5,
            },
            Factor::Pow(1.0),
        ])
        .unwrap();
        let oracle = PolarOracle::new(&a, &w(-0.5, 2), 16, 8).unwrap();
        let p = mi(&[2, 0]);
        let q = mi(&[1, 3]);
        let x = oracle.inner_product(&p, &q).unwrap().value;
        let y = oracle.inner_product(&q, &p).unwrap().value;
        assert!((x - y.conj()).norm() < 1e-12);
    }

    #[test]
    fn matrix_matches_single_entries() {
        let a = SymbolSpec::radial(Factor::Step {
            threshold: 0.5,
            low: 2.0,
            high: 1.0,
        })
        .unwrap();
        let wt = w(0.5, 2);
        let oracle = PolarOracle::new(&a, &wt, 12, 6).unwrap();
        let basis = special::enumerate_degree(2, 2);
        let m = oracle.matrix(&basis).unwrap();
        for (i, row) in basis.iter().enumerate() {
            for (j, col) in basis.iter().enumerate() {
                let single = oracle.inner_product(col, row).unwrap();
                assert!((m.values[(i, j)] - single.value).norm() < 1e-14);
            }
        }
    }
}
