//! Exact linear algebra: fraction-free determinant, rational Gauss-Jordan
//! inversion and unit lower triangular inversion.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{bit_len, Integer, Rational};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixQ, MatrixZ};

/// Bareiss fraction-free determinant of an integer matrix.
///
/// Each elimination step divides by the previous pivot. That division is
/// exact by construction and is checked on every entry.
pub fn det_bareiss_z(m: &MatrixZ) -> Result<Integer> {
    let n = m.require_square()?;
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = Integer::one();
    for k in 0..n.saturating_sub(1) {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    negate = !negate;
                }
                None => return Ok(Integer::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                let (q, r) = num.div_rem(&prev);
                assert!(
                    r.is_zero(),
                    "inexact Bareiss division at step {k}, ({i}, {j})"
                );
                a[(i, j)] = q;
            }
            a[(i, k)] = Integer::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if negate { -det } else { det })
}

/// Exact determinant of a rational matrix.
///
/// Each row is first scaled by the LCM of its denominators so Bareiss runs
/// over integers; the product of those scales is divided out at the end.
pub fn det_bareiss(m: &MatrixQ) -> Result<Rational> {
    let (z, scale) = clear_row_denominators(m);
    let det = det_bareiss_z(&z)?;
    Ok(Rational::new(det, scale))
}

fn clear_row_denominators(m: &MatrixQ) -> (MatrixZ, Integer) {
    let mut scale = Integer::one();
    let mut rows = Vec::with_capacity(m.rows());
    for row in m.iter_rows() {
        let lcm = row.iter().fold(Integer::one(), |acc, q| acc.lcm(q.denom()));
        rows.push(
            row.iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect::<Vec<_>>(),
        );
        scale *= lcm;
    }
    (
        Matrix::from_rows(rows).expect("rows have equal length"),
        scale,
    )
}

/// Exact inverse by Gauss-Jordan elimination, pivoting on the first nonzero
/// entry of each column.
pub fn invert_rational(m: &MatrixQ) -> Result<MatrixQ> {
    gauss_jordan(m, &mut |_| {})
}

/// Like [`invert_rational`], also returning the largest numerator bit length
/// seen in any intermediate entry.
pub fn invert_rational_traced(m: &MatrixQ) -> Result<(MatrixQ, u64)> {
    let mut max_bits = 0;
    let inv = gauss_jordan(m, &mut |q| max_bits = max_bits.max(bit_len(q.numer())))?;
    Ok((inv, max_bits))
}

fn gauss_jordan(m: &MatrixQ, observe: &mut dyn FnMut(&Rational)) -> Result<MatrixQ> {
    let n = m.require_square()?;
    let width = 2 * n;
    let mut aug = Matrix::from_fn(n, width, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    aug.entries().iter().for_each(&mut *observe);

    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !aug[(r, col)].is_zero()) else {
            continue;
        };
        aug.swap_rows(rank, p);
        let inv_pivot = aug[(rank, col)].recip();
        for j in col..width {
            let v = &aug[(rank, j)] * &inv_pivot;
            observe(&v);
            aug[(rank, j)] = v;
        }
        for i in 0..n {
            if i == rank || aug[(i, col)].is_zero() {
                continue;
            }
            let factor = aug[(i, col)].clone();
            for j in col..width {
                if aug[(rank, j)].is_zero() {
                    continue;
                }
                let v = &aug[(i, j)] - &factor * &aug[(rank, j)];
                observe(&v);
                aug[(i, j)] = v;
            }
        }
        rank += 1;
    }
    if rank < n {
        return Err(Error::Singular { rank, size: n });
    }
    Ok(Matrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
}

/// Solves `l x = b` for unit lower triangular `l` by forward substitution.
/// The caller guarantees the shape of `l`.
pub fn forward_substitute(l: &MatrixZ, b: &[Integer]) -> Vec<Integer> {
    let mut x: Vec<Integer> = Vec::with_capacity(b.len());
    for (i, bi) in b.iter().enumerate() {
        let row = l.row(i);
        let dot = row[..i]
            .iter()
            .zip(&x)
            .fold(Integer::zero(), |acc, (lij, xj)| acc + lij * xj);
        x.push(bi - dot);
    }
    x
}

/// Integer inverse of a unit lower triangular integer matrix.
pub fn invert_unit_lower_triangular(l: &MatrixZ) -> Result<MatrixZ> {
    if let Some((i, j)) = l.first_non_unit_lower() {
        return Err(Error::NotUnitLowerTriangular { i, j });
    }
    let n = l.rows();
    let columns: Vec<Vec<Integer>> = (0..n)
        .map(|c| {
            let e: Vec<Integer> = (0..n)
                .map(|i| {
                    if i == c {
                        Integer::one()
                    } else {
                        Integer::zero()
                    }
                })
                .collect();
            forward_substitute(l, &e)
        })
        .collect();
    Ok(Matrix::from_fn(n, n, |i, j| columns[j][i].clone()))
}

/// Column 0 of `l^-1`, without forming the rest of the inverse.
pub fn unit_lower_inverse_first_column(l: &MatrixZ) -> Result<Vec<Integer>> {
    if let Some((i, j)) = l.first_non_unit_lower() {
        return Err(Error::NotUnitLowerTriangular { i, j });
    }
    let mut e = vec![Integer::zero(); l.rows()];
    e[0] = Integer::one();
    Ok(forward_substitute(l, &e))
}

/// Largest numerator bit length over the entries of a rational matrix.
pub fn max_numerator_bits(m: &MatrixQ) -> u64 {
    m.entries()
        .iter()
        .map(|q| q.numer().abs().bits())
        .max()
        .unwrap_or(0)
}
