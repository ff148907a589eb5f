//! CSV and JSON writers. Floats are written in shortest round-trip form.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use toeplitz_core::spectral::SpectrumEntry;
use toeplitz_core::{EigenvalueSequence, TruncatedOperator};

use crate::verify::Check;

/// Shortest decimal string that parses back to the same `f64`.
pub fn float(v: f64) -> String {
    format!("{v:?}")
}

fn csv_bytes(header: Vec<String>, rows: Vec<Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.into_inner().context("flushing CSV buffer")
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

fn index_header(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("m{j}")).collect()
}

/// Per-degree rows for radial symbols, per-multi-index rows otherwise.
pub fn eigens_csv(seq: &EigenvalueSequence) -> Result<Vec<u8>> {
    match &seq.per_degree {
        Some(per) => {
            let header = ["degree", "value", "multiplicity"]
                .map(String::from)
                .to_vec();
            let rows = per
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let m = toeplitz_core::special::multiplicity(seq.n, k as u32);
                    vec![k.to_string(), float(v), m.to_string()]
                })
                .collect();
            csv_bytes(header, rows)
        }
        None => {
            let mut header = index_header(seq.n);
            header.extend(["degree", "value"].map(String::from));
            let rows = seq
                .iter()
                .map(|(m, v)| {
                    let mut row: Vec<String> = m.entries().iter().map(u32::to_string).collect();
                    row.push(m.degree().to_string());
                    row.push(float(v));
                    row
                })
                .collect();
            csv_bytes(header, rows)
        }
    }
}

/// One row per basis element: its index, multi-index, degree and matrix row.
pub fn matrix_csv(op: &TruncatedOperator) -> Result<Vec<u8>> {
    let mut header = vec!["row".to_string()];
    header.extend(index_header(op.n));
    header.push("degree".into());
    header.extend((0..op.dim()).map(|j| format!("c{j}")));
    let rows = op
        .basis
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut row = vec![i.to_string()];
            row.extend(m.entries().iter().map(u32::to_string));
            row.push(m.degree().to_string());
            row.extend(op.entries.row(i).iter().map(|&v| float(v)));
            row
        })
        .collect();
    csv_bytes(header, rows)
}

pub fn spectrum_csv(entries: &[SpectrumEntry]) -> Result<Vec<u8>> {
    let header = ["degree", "eigenvalue", "multiplicity"]
        .map(String::from)
        .to_vec();
    let rows = entries
        .iter()
        .map(|e| {
            vec![
                e.degree.to_string(),
                float(e.eigenvalue),
                e.multiplicity.to_string(),
            ]
        })
        .collect();
    csv_bytes(header, rows)
}

pub fn checks_csv(checks: &[Check]) -> Result<Vec<u8>> {
    let header = ["check", "passed", "residual", "limit", "detail"]
        .map(String::from)
        .to_vec();
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.passed.to_string(),
                c.residual.map(float).unwrap_or_default(),
                c.limit.map(float).unwrap_or_default(),
                c.detail.clone(),
            ]
        })
        .collect();
    csv_bytes(header, rows)
}

/// Writes to `path`, or to standard output when `None`.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [
            0.1,
            1.0 / 3.0,
            1e-300,
            2.5e17,
            -0.0,
            0.75,
            f64::MIN_POSITIVE,
        ] {
            let s = float(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(float(0.5), "0.5");
        assert_eq!(float(1.0), "1.0");
    }
}
