use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{eigenvalue_sequence, EigenvalueSequence, Orders, SymbolSpec};
use crate::error::{Error, Result};
use crate::oracle::PolarOracle;
use crate::special::{self, MultiIndex, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixMethod {
    /// Eigenvalues on the diagonal, zeros elsewhere.
    Diagonal,
    /// Every entry `⟨a e_m, e_{m'}⟩_α` integrated by the polar oracle.
    Oracle,
}

/// Compression of `T_a` to the polynomials of degree `<= max_degree`,
/// written in the orthonormal basis `e_m` listed in graded-lex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedOperator {
    pub n: usize,
    pub alpha: f64,
    pub max_degree: u32,
    pub method: MatrixMethod,
    /// Largest `|Im|` dropped from oracle entries.
    pub imag_residual: f64,
    pub error_estimate: f64,
    pub basis: Vec<MultiIndex>,
    #[serde(serialize_with = "ser_rows", deserialize_with = "de_rows")]
    pub entries: DMatrix<f64>,
}

fn ser_rows<S: Serializer>(m: &DMatrix<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
    rows.serialize(s)
}

fn de_rows<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<DMatrix<f64>, D::Error> {
    let rows = Vec::<Vec<f64>>::deserialize(d)?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(serde::de::Error::custom("matrix rows must form a square"));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

impl TruncatedOperator {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn from_sequence(s: &EigenvalueSequence) -> Self {
        TruncatedOperator {
            n: s.n,
            alpha: s.alpha,
            max_degree: s.max_degree,
            method: MatrixMethod::Diagonal,
            imag_residual: 0.0,
            error_estimate: s.error_estimate,
            basis: s.basis.clone(),
            entries: DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&s.values)),
        }
    }

    fn check_compatible(&self, other: &TruncatedOperator) -> Result<()> {
        if self.n != other.n
            || self.alpha.to_bits() != other.alpha.to_bits()
            || self.basis != other.basis
        {
            return Err(Error::argument("operators act on different truncations"));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &TruncatedOperator) -> Result<TruncatedOperator> {
        self.check_compatible(other)?;
        Ok(TruncatedOperator {
            entries: &self.entries * &other.entries,
            error_estimate: self.error_estimate + other.error_estimate,
            imag_residual: self.imag_residual.max(other.imag_residual),
            ..self.clone()
        })
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &TruncatedOperator) -> Result<DMatrix<f64>> {
        self.check_compatible(other)?;
        Ok(&self.entries * &other.entries - &other.entries * &self.entries)
    }

    pub fn max_abs_diff(&self, other: &TruncatedOperator) -> Result<f64> {
        self.check_compatible(other)?;
        Ok((&self.entries - &other.entries).amax())
    }

    /// Largest `|A_ij - A_ji|`.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.entries - self.entries.transpose()).amax()
    }

    /// Largest off-diagonal magnitude, restricted by a predicate on the pair
    /// of row and column multi-indices.
    pub fn max_offdiag_where<F: Fn(&MultiIndex, &MultiIndex) -> bool>(&self, keep: F) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, mi) in self.basis.iter().enumerate() {
            for (j, mj) in self.basis.iter().enumerate() {
                if i != j && keep(mi, mj) {
                    worst = worst.max(self.entries[(i, j)].abs());
                }
            }
        }
        worst
    }

    pub fn max_offdiag(&self) -> f64 {
        self.max_offdiag_where(|_, _| true)
    }
}

/// Truncated matrix of `T_a` on `{|m| <= max_degree}`.
pub fn truncated_matrix(
    a: &SymbolSpec,
    w: &Weight,
    max_degree: u32,
    method: MatrixMethod,
    orders: &Orders,
) -> Result<TruncatedOperator> {
    match method {
        MatrixMethod::Diagonal => {
            let seq = eigenvalue_sequence(a, w, max_degree, orders)?;
            Ok(TruncatedOperator::from_sequence(&seq))
        }
        MatrixMethod::Oracle => {
            let basis = special::enumerate_degree(w.n(), max_degree);
            let oracle =
                PolarOracle::new(a, w, orders.oracle_radial, orders.angular_for(max_degree))?;
            let m = oracle.matrix(&basis)?;
            let dim = basis.len();
            let mut imag_residual: f64 = 0.0;
            let mut error_estimate: f64 = 0.0;
            for i in 0..dim {
                for j in 0..dim {
                    let v = m.values[(i, j)];
                    if !(v.re.is_finite() && v.im.is_finite()) {
                        return Err(Error::Numeric(format!(
                            "oracle entry ({}, {}) did not converge: {v}",
                            basis[i], basis[j]
                        )));
                    }
                    imag_residual = imag_residual.max(v.im.abs());
                    error_estimate = error_estimate.max(m.errors[(i, j)]);
                }
            }
            Ok(TruncatedOperator {
                n: w.n(),
                alpha: w.alpha(),
                max_degree,
                method,
                imag_residual,
                error_estimate,
                entries: m.values.map(|v| v.re),
                basis,
            })
        }
    }
}
