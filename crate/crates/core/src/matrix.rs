//! Dense and diagonal exact matrices plus generators for the combinatorial
//! matrices: symmetric Pascal `P`, reciprocal Pascal `R`, super Catalan `S`,
//! and the factors `G`, `L`, `D`.
//!
//! All matrices are indexed from 0. Generators reject `n = 0`.

use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::arith::{self, Integer, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type MatrixZ = Matrix<Integer>;
pub type MatrixQ = Matrix<Rational>;

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from its rows. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                left_rows: i,
                left_cols: r.len(),
                right_rows: 0,
                right_cols: cols,
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn map<S>(&self, f: impl FnMut(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.entries.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }
}

impl<T: PartialEq + Clone> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }
}

impl<T: Zero + One + PartialEq> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Zeros strictly above the diagonal and ones on it.
    pub fn is_unit_lower_triangular(&self) -> bool {
        self.first_non_unit_lower().is_none()
    }

    pub(crate) fn first_non_unit_lower(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            if !self[(i, i)].is_one() {
                return Some((i, i));
            }
            for j in i + 1..self.cols {
                if !self[(i, j)].is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }
}

/// Exact inner product, the kernel of [`Matrix::mul`].
pub trait Dot: Sized {
    fn dot<'a>(pairs: impl Iterator<Item = (&'a Self, &'a Self)>) -> Self
    where
        Self: 'a;
}

impl Dot for Integer {
    fn dot<'a>(pairs: impl Iterator<Item = (&'a Self, &'a Self)>) -> Self {
        pairs.fold(Integer::zero(), |acc, (a, b)| acc + a * b)
    }
}

impl Dot for Rational {
    /// Brings every product over the LCM of the denominators and reduces once.
    fn dot<'a>(pairs: impl Iterator<Item = (&'a Self, &'a Self)>) -> Self {
        let terms: Vec<(Integer, Integer)> = pairs
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| (a.numer() * b.numer(), a.denom() * b.denom()))
            .collect();
        let lcm = terms.iter().fold(Integer::one(), |acc, (_, d)| {
            num_integer::Integer::lcm(&acc, d)
        });
        let num: Integer = terms.iter().map(|(n, d)| n * (&lcm / d)).sum();
        Rational::new(num, lcm)
    }
}

impl<T: Dot> Matrix<T> {
    /// Exact matrix product.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            T::dot((0..self.cols).map(|k| (&self[(i, k)], &rhs[(k, j)])))
        }))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.entries[i * self.cols + j]
    }
}

impl MatrixZ {
    pub fn to_rational(&self) -> MatrixQ {
        self.map(|z| Rational::from_integer(z.clone()))
    }
}

impl MatrixQ {
    /// Checked demotion to an integer matrix. Fails on the first entry
    /// (in row-major order) whose denominator is not one.
    pub fn to_integer(&self) -> Result<MatrixZ> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (idx, q) in self.entries.iter().enumerate() {
            match arith::as_integer(q) {
                Some(z) => entries.push(z),
                None => {
                    return Err(Error::NonInteger {
                        i: idx / self.cols,
                        j: idx % self.cols,
                        value: q.to_string(),
                    })
                }
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

/// Diagonal matrix stored as its diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagonal<T> {
    diag: Vec<T>,
}

pub type DiagonalZ = Diagonal<Integer>;
pub type DiagonalQ = Diagonal<Rational>;

impl<T> Diagonal<T> {
    pub fn new(diag: Vec<T>) -> Self {
        Self { diag }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn map<S>(&self, f: impl FnMut(&T) -> S) -> Diagonal<S> {
        Diagonal {
            diag: self.diag.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero> Diagonal<T> {
    pub fn to_dense(&self) -> Matrix<T> {
        let n = self.diag.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i].clone()
            } else {
                T::zero()
            }
        })
    }
}

impl<T> Diagonal<T>
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    /// `self * m`: scales row `i` of `m` by `diag[i]`.
    pub fn mul_left(&self, m: &Matrix<T>) -> Result<Matrix<T>> {
        if self.diag.len() != m.rows {
            return Err(Error::DimensionMismatch {
                left_rows: self.diag.len(),
                left_cols: self.diag.len(),
                right_rows: m.rows,
                right_cols: m.cols,
            });
        }
        Ok(Matrix::from_fn(m.rows, m.cols, |i, j| {
            &self.diag[i] * &m[(i, j)]
        }))
    }

    /// `m * self`: scales column `j` of `m` by `diag[j]`.
    pub fn mul_right(&self, m: &Matrix<T>) -> Result<Matrix<T>> {
        if m.cols != self.diag.len() {
            return Err(Error::DimensionMismatch {
                left_rows: m.rows,
                left_cols: m.cols,
                right_rows: self.diag.len(),
                right_cols: self.diag.len(),
            });
        }
        Ok(Matrix::from_fn(m.rows, m.cols, |i, j| {
            &m[(i, j)] * &self.diag[j]
        }))
    }
}

impl DiagonalZ {
    pub fn to_rational(&self) -> DiagonalQ {
        self.map(|z| Rational::from_integer(z.clone()))
    }
}

fn require_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyMatrix)
    } else {
        Ok(())
    }
}

/// Symmetric Pascal matrix, `P[i][j] = C(i + j, i)`.
pub fn pascal_matrix(n: usize) -> Result<MatrixZ> {
    require_size(n)?;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        // C(i + j + 1, i) = C(i + j, i) * (i + j + 1) / (j + 1)
        let mut row = Vec::with_capacity(n);
        let mut c = Integer::one();
        for j in 0..n {
            row.push(c.clone());
            c = c * (i + j + 1) / (j + 1);
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// Entrywise reciprocal.
pub fn hadamard_inverse(m: &MatrixQ) -> Result<MatrixQ> {
    for i in 0..m.rows {
        for j in 0..m.cols {
            if m[(i, j)].is_zero() {
                return Err(Error::ZeroEntry { i, j });
            }
        }
    }
    Ok(m.map(Rational::recip))
}

/// Reciprocal Pascal matrix, `R[i][j] = 1 / C(i + j, i)`.
pub fn reciprocal_pascal(n: usize) -> Result<MatrixQ> {
    require_size(n)?;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        let mut r = Rational::one();
        for j in 0..n {
            row.push(r.clone());
            r *= Rational::new((j + 1).into(), (i + j + 1).into());
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// Super Catalan matrix, `S[m][k] = (2m)! (2k)! / (m! k! (m + k)!)`.
pub fn super_catalan_matrix(n: usize) -> Result<MatrixZ> {
    require_size(n)?;
    let mut rows = Vec::with_capacity(n);
    for m in 0..n {
        // S(m, k + 1) = S(m, k) * 2 (2k + 1) / (m + k + 1); S(m, 0) = C(2m, m)
        let mut row = Vec::with_capacity(n);
        let mut s = arith::central_binomial(m as u64);
        for k in 0..n {
            row.push(s.clone());
            s = s * (2 * (2 * k + 1)) / (m + k + 1);
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// `G = diag(C(2m, m))`.
pub fn g_matrix(n: usize) -> Result<DiagonalZ> {
    require_size(n)?;
    Ok(Diagonal::new(
        (0..n as u64).map(arith::central_binomial).collect(),
    ))
}

/// Unit lower triangular `L[m][k] = C(2m, m + k)`.
pub fn l_matrix(n: usize) -> Result<MatrixZ> {
    require_size(n)?;
    let mut rows = Vec::with_capacity(n);
    for m in 0..n {
        // C(2m, m + k + 1) = C(2m, m + k) * (m - k) / (m + k + 1), zero once k > m
        let mut row = Vec::with_capacity(n);
        let mut c = arith::central_binomial(m as u64);
        for k in 0..n {
            if k > m {
                row.push(Integer::zero());
                continue;
            }
            row.push(c.clone());
            c = c * (m - k) / (m + k + 1);
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// `D = diag(1, -2, 2, -2, ...)`.
pub fn d_matrix(n: usize) -> Result<DiagonalZ> {
    require_size(n)?;
    Ok(Diagonal::new(
        (0..n)
            .map(|m| match m {
                0 => Integer::one(),
                m if m % 2 == 1 => Integer::from(-2),
                _ => Integer::from(2),
            })
            .collect(),
    ))
}
