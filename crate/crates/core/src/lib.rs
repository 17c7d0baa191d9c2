//! Exact construction and verification of the reciprocal Pascal matrix
//! `R[i][j] = 1 / C(i + j, i)`, the super Catalan matrix and the two
//! factorizations `S = G R G` and `S = L D L^T` that tie them together.
//!
//! Everything is computed in arbitrary-precision integer or rational
//! arithmetic. Nothing is ever rounded.

pub mod arith;
pub mod cli;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod matrix;
pub mod sequences;

pub use arith::{Integer, Rational};
pub use error::{Error, Result};
pub use identities::CheckReport;
pub use matrix::{Diagonal, DiagonalZ, Matrix, MatrixQ, MatrixZ};
