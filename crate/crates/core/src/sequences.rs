//! OEIS b-file reading and writing, matrix export, and sequence readings of
//! the generated matrices.
//!
//! A b-file has one `index value` pair per line with consecutive indices.
//! Lines starting with `#` are comments.

use std::fmt::{Display, Write as _};
use std::time::Instant;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::Integer;
use crate::error::{Error, Result};
use crate::identities::{CheckReport, Counterexample, Instance};
use crate::linalg;
use crate::matrix::{self, Matrix, MatrixQ, MatrixZ};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub oeis_id: String,
    /// Index of `terms[0]`.
    pub offset: i64,
    pub terms: Vec<Integer>,
}

impl SequenceRecord {
    pub fn new(oeis_id: impl Into<String>, offset: i64, terms: Vec<Integer>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self {
            oeis_id: oeis_id.into(),
            offset,
            terms,
        })
    }

    pub fn last_index(&self) -> i64 {
        self.offset + self.terms.len() as i64 - 1
    }

    pub fn get(&self, index: i64) -> Option<&Integer> {
        let pos = index.checked_sub(self.offset)?;
        usize::try_from(pos).ok().and_then(|p| self.terms.get(p))
    }
}

pub fn emit_bfile(rec: &SequenceRecord) -> String {
    let mut out = String::new();
    for (k, t) in rec.terms.iter().enumerate() {
        writeln!(out, "{} {}", rec.offset + k as i64, t).expect("writing to a String");
    }
    out
}

pub fn parse_bfile(oeis_id: &str, text: &str) -> Result<SequenceRecord> {
    let mut offset = None;
    let mut terms = Vec::new();
    for (lineno, line) in text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected `index value`, got {line:?}")));
        };
        let idx: i64 = idx
            .parse()
            .map_err(|_| parse_err(format!("bad index {idx:?}")))?;
        let val: Integer = val
            .parse()
            .map_err(|_| parse_err(format!("bad value {val:?}")))?;
        let start = *offset.get_or_insert(idx);
        let expected = start + terms.len() as i64;
        if idx != expected {
            return Err(Error::NonConsecutive {
                line: lineno,
                expected,
                found: idx,
            });
        }
        terms.push(val);
    }
    SequenceRecord::new(oeis_id, offset.unwrap_or(0), terms)
}

/// Row-by-row reading. With `triangular` set only columns `0..=i` of row `i`
/// are read, which requires a lower triangular matrix.
pub fn triangle_rows_sequence(m: &MatrixZ, triangular: bool) -> Result<Vec<Integer>> {
    if !triangular {
        return Ok(m.entries().to_vec());
    }
    m.require_square()?;
    if let Some((i, j)) = (0..m.rows()).find_map(|i| {
        (i + 1..m.cols())
            .find(|&j| !m[(i, j)].is_zero())
            .map(|j| (i, j))
    }) {
        return Err(Error::NotUnitLowerTriangular { i, j });
    }
    Ok((0..m.rows())
        .flat_map(|i| m.row(i)[..=i].iter().cloned())
        .collect())
}

/// Antidiagonal reading `(0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...` of a
/// square matrix. The antidiagonals past the main one are truncated by the
/// matrix border.
pub fn antidiagonal_sequence<T: Clone>(m: &Matrix<T>) -> Result<Vec<T>> {
    let n = m.require_square()?;
    let mut out = Vec::with_capacity(n * n);
    for d in 0..(2 * n).saturating_sub(1) {
        for i in d.saturating_sub(n - 1)..=d.min(n - 1) {
            out.push(m[(i, d - i)].clone());
        }
    }
    Ok(out)
}

/// Only the complete antidiagonals `0..n`, the usual OEIS reading of a
/// square array.
pub fn complete_antidiagonals<T: Clone>(m: &Matrix<T>) -> Result<Vec<T>> {
    let n = m.require_square()?;
    Ok((0..n)
        .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
        .map(|ij| m[ij].clone())
        .collect())
}

/// `det(R(n)^-1)` for `n = 1..=max_n`, computed as
/// `det_bareiss(invert_rational(R(n)))`.
pub fn det_inverse_sequence(max_n: usize) -> Result<Vec<Integer>> {
    if max_n == 0 {
        return Err(Error::EmptyMatrix);
    }
    (1..=max_n)
        .map(|n| {
            let inv = linalg::invert_rational(&matrix::reciprocal_pascal(n)?)?;
            let det = linalg::det_bareiss(&inv)?;
            crate::arith::as_integer(&det).ok_or(Error::NonInteger {
                i: n,
                j: n,
                value: det.to_string(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Compare {
    #[default]
    Exact,
    /// Compare absolute values; record sign disagreements separately.
    Magnitude,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub report: CheckReport,
    /// Indices inside the overlap where the two signs differ.
    pub sign_mismatches: Vec<i64>,
}

/// Compares `reference` against `generated` over their common index range.
pub fn crosscheck(
    reference: &SequenceRecord,
    generated: &SequenceRecord,
    mode: Compare,
) -> Result<CrossCheck> {
    let t = Instant::now();
    let lo = reference.offset.max(generated.offset);
    let hi = reference.last_index().min(generated.last_index());
    if lo > hi {
        return Err(Error::EmptyOverlap {
            left: reference.oeis_id.clone(),
            right: generated.oeis_id.clone(),
        });
    }
    let mut cx = None;
    let mut sign_mismatches = Vec::new();
    for idx in lo..=hi {
        let (Some(want), Some(got)) = (reference.get(idx), generated.get(idx)) else {
            unreachable!("index {idx} lies inside both records");
        };
        let equal = match mode {
            Compare::Exact => want == got,
            Compare::Magnitude => want.abs() == got.abs(),
        };
        if want.signum() != got.signum() {
            sign_mismatches.push(idx);
        }
        if !equal && cx.is_none() {
            cx = Some(Counterexample {
                i: idx,
                j: None,
                expected: want.to_string(),
                actual: got.to_string(),
            });
        }
    }
    let name = format!("crosscheck:{}", reference.oeis_id);
    let report = CheckReport::new(name, Instance::Size((hi - lo + 1) as usize), cx, t);
    Ok(CrossCheck {
        report,
        sign_mismatches,
    })
}

#[derive(Serialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[String; 2]>,
}

/// `{"rows", "cols", "entries": [["num", "den"], ...]}`, row-major, with
/// every integer written as a decimal string.
pub fn matrix_to_json(m: &MatrixQ) -> String {
    let doc = MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: m
            .entries()
            .iter()
            .map(|q| [q.numer().to_string(), q.denom().to_string()])
            .collect(),
    };
    serde_json::to_string(&doc).expect("matrix JSON is always serializable")
}

/// One line per row, entries separated by `,`; rationals as `num/den`.
pub fn matrix_to_csv<T: Display>(m: &Matrix<T>) -> String {
    let mut out = String::new();
    for row in m.iter_rows() {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Right-aligned columns for reading at a terminal.
pub fn matrix_to_pretty<T: Display>(m: &Matrix<T>) -> String {
    let cells: Vec<Vec<String>> = m
        .iter_rows()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Candidate readings of the super Catalan array: full rows, complete
/// antidiagonals, and antidiagonals with every entry past `(0, 0)` halved.
pub fn super_catalan_readings(n: usize) -> Result<Vec<(&'static str, Vec<Integer>)>> {
    let s = matrix::super_catalan_matrix(n)?;
    let anti = complete_antidiagonals(&s)?;
    let halved = anti
        .iter()
        .enumerate()
        .map(|(k, v)| if k == 0 { v.clone() } else { v / 2 })
        .collect();
    Ok(vec![
        ("rows", triangle_rows_sequence(&s, false)?),
        ("antidiagonals", anti),
        ("halved", halved),
    ])
}
