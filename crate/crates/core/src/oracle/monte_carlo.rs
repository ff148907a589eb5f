use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

use super::{Effort, OracleMatrix, OracleMethod, OracleResult, MIN_SAMPLES};
use crate::error::{Error, Result};
use crate::special::{check_same_dim, MultiIndex, Weight};
use crate::spectral::SymbolSpec;

const CHUNK: usize = 2048;

/// A fixed sample of `v_α` with the symbol evaluated at every point.
///
/// All entries computed from one oracle share the sample, so results depend
/// only on `(samples, seed)` and not on evaluation order.
pub struct MonteCarloOracle {
    n: usize,
    samples: usize,
    seed: u64,
    points: Vec<Complex64>,
    symbol_values: Vec<f64>,
}

impl MonteCarloOracle {
    pub fn new(a: &SymbolSpec, w: &Weight, samples: usize, seed: u64) -> Result<Self> {
        a.check_dim(w.n())?;
        if samples < MIN_SAMPLES {
            return Err(Error::argument(format!(
                "Monte Carlo oracle needs at least {MIN_SAMPLES} samples, got {samples}"
            )));
        }
        let n = w.n();
        // |z|² under v_α has density ∝ t^{n-1} (1-t)^α
        let radius_law = Beta::new(n as f64, w.alpha() + 1.0)
            .map_err(|e| Error::Numeric(format!("radius law: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(samples * n);
        let mut symbol_values = Vec::with_capacity(samples);
        let mut g = vec![Complex64::new(0.0, 0.0); n];
        let mut radii = vec![0.0; n];
        for _ in 0..samples {
            let t: f64 = radius_law.sample(&mut rng);
            for c in g.iter_mut() {
                *c = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            }
            let norm = g.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let scale = t.sqrt() / norm;
            for (c, r) in g.iter().zip(radii.iter_mut()) {
                let z = c * scale;
                *r = z.norm();
                points.push(z);
            }
            symbol_values.push(a.eval_radii(&radii));
        }
        Ok(MonteCarloOracle {
            n,
            samples,
            seed,
            points,
            symbol_values,
        })
    }

    fn effort(&self) -> Effort {
        Effort::MonteCarlo {
            samples: self.samples,
            seed: self.seed,
        }
    }

    fn monomial(&self, i: usize, m: &MultiIndex) -> Complex64 {
        self.points[i * self.n..(i + 1) * self.n]
            .iter()
            .zip(m.entries())
            .map(|(z, &k)| z.powu(k))
            .product()
    }

    fn check(&self, m: &MultiIndex) -> Result<()> {
        if m.dim() != self.n {
            return Err(Error::argument(format!(
                "multi-index {m} has length {} but n = {}",
                m.dim(),
                self.n
            )));
        }
        Ok(())
    }

    /// `⟨a e_m, e_{m2}⟩_α` as a ratio of sample means, with a delta-method
    /// standard error.
    pub fn entry(&self, m: &MultiIndex, m2: &MultiIndex) -> Result<OracleResult> {
        self.check(m)?;
        check_same_dim(m, m2)?;
        let s = self.samples as f64;
        let mut xs = Vec::with_capacity(self.samples);
        let mut bs = Vec::with_capacity(self.samples);
        let mut cs = Vec::with_capacity(self.samples);
        for i in 0..self.samples {
            let u = self.monomial(i, m);
            let v = self.monomial(i, m2);
            xs.push(self.symbol_values[i] * u * v.conj());
            bs.push(u.norm_sqr());
            cs.push(v.norm_sqr());
        }
        let mean_x = xs.iter().sum::<Complex64>() / s;
        let mean_b = bs.iter().sum::<f64>() / s;
        let mean_c = cs.iter().sum::<f64>() / s;
        let denom = (mean_b * mean_c).sqrt();
        let value = mean_x / denom;
        let ss: f64 = (0..self.samples)
            .map(|i| (xs[i] / denom - value * 0.5 * (bs[i] / mean_b + cs[i] / mean_c)).norm_sqr())
            .sum();
        Ok(OracleResult {
            value,
            error_estimate: ss.sqrt() / s,
            method: OracleMethod::MonteCarlo,
            effort: self.effort(),
        })
    }

    /// Every entry `⟨a e_{basis_j}, e_{basis_i}⟩_α` with its standard error,
    /// accumulated in chunks as real matrix products.
    pub fn matrix(&self, basis: &[MultiIndex]) -> Result<OracleMatrix> {
        for m in basis {
            self.check(m)?;
        }
        let dim = basis.len();
        let top = basis
            .iter()
            .flat_map(|m| m.entries().iter().copied())
            .max()
            .unwrap_or(0) as usize;

        let zeros = || DMatrix::<f64>::zeros(dim, dim);
        let (mut m_re, mut m_im, mut sq, mut t_re, mut t_im, mut gram) =
            (zeros(), zeros(), zeros(), zeros(), zeros(), zeros());
        let mut mass = vec![0.0; dim];
        let mut powers = vec![Complex64::new(0.0, 0.0); self.n * (top + 1)];

        for start in (0..self.samples).step_by(CHUNK) {
            let rows = CHUNK.min(self.samples - start);
            let mut vr = DMatrix::<f64>::zeros(rows, dim);
            let mut vi = DMatrix::<f64>::zeros(rows, dim);
            for r in 0..rows {
                let i = start + r;
                for l in 0..self.n {
                    let z = self.points[i * self.n + l];
                    let mut acc = Complex64::new(1.0, 0.0);
                    for p in 0..=top {
                        powers[l * (top + 1) + p] = acc;
                        acc *= z;
                    }
                }
                for (j, m) in basis.iter().enumerate() {
                    let v: Complex64 = m
                        .entries()
                        .iter()
                        .enumerate()
                        .map(|(l, &k)| powers[l * (top + 1) + k as usize])
                        .product();
                    vr[(r, j)] = v.re;
                    vi[(r, j)] = v.im;
                }
            }
            let a = nalgebra::DVector::from_column_slice(&self.symbol_values[start..start + rows]);
            let q = vr.component_mul(&vr) + vi.component_mul(&vi);
            let avr = DMatrix::from_fn(rows, dim, |r, j| a[r] * vr[(r, j)]);
            let avi = DMatrix::from_fn(rows, dim, |r, j| a[r] * vi[(r, j)]);
            let a2q = DMatrix::from_fn(rows, dim, |r, j| a[r] * a[r] * q[(r, j)]);
            let avr_q = avr.component_mul(&q);
            let avi_q = avi.component_mul(&q);

            m_re += vr.tr_mul(&avr) + vi.tr_mul(&avi);
            m_im += vr.tr_mul(&avi) - vi.tr_mul(&avr);
            sq += q.tr_mul(&a2q);
            t_re += vr.tr_mul(&avr_q) + vi.tr_mul(&avi_q);
            t_im += vr.tr_mul(&avi_q) - vi.tr_mul(&avr_q);
            gram += q.tr_mul(&q);
            for (j, b) in mass.iter_mut().enumerate() {
                *b += q.column(j).sum();
            }
        }

        let s = self.samples as f64;
        for b in mass.iter_mut() {
            *b /= s;
        }
        let mut values = DMatrix::zeros(dim, dim);
        let mut errors = DMatrix::zeros(dim, dim);
        for r in 0..dim {
            for c in 0..dim {
                // row r pairs with \bar z^{basis_r}, column c with z^{basis_c}
                let (br, bc) = (mass[r], mass[c]);
                let denom = (br * bc).sqrt();
                let x = Complex64::new(m_re[(r, c)], m_im[(r, c)]) / s;
                let value = x / denom;
                // Σ x (β_c + β_r) with β_j = |z^{basis_j}|² / B_j
                let t1 = Complex64::new(t_re[(r, c)], t_im[(r, c)]);
                let t2 = Complex64::new(t_re[(c, r)], -t_im[(c, r)]);
                let cross = t1 / bc + t2 / br;
                let betas = gram[(c, c)] / (bc * bc)
                    + 2.0 * gram[(r, c)] / (bc * br)
                    + gram[(r, r)] / (br * br);
                let ss = sq[(r, c)] / (denom * denom) - (value.conj() * cross).re / denom
                    + value.norm_sqr() / 4.0 * betas;
                values[(r, c)] = value;
                errors[(r, c)] = ss.max(0.0).sqrt() / s;
            }
        }
        Ok(OracleMatrix { values, errors })
    }
}

/// `⟨a e_m, e_{m2}⟩_α` from `samples` points of `v_α` drawn with `seed`.
pub fn inner_product_mc(
    a: &SymbolSpec,
    m: &MultiIndex,
    m2: &MultiIndex,
    w: &Weight,
    samples: usize,
    seed: u64,
) -> Result<OracleResult> {
    MonteCarloOracle::new(a, w, samples, seed)?.entry(m, m2)
}
