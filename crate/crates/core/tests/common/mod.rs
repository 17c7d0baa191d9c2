//! Test-only oracles that share no code path with the library's elimination
//! routines.

#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::Zero;
use recip_pascal::{MatrixQ, Rational};

/// Laplace expansion along successive rows, memoized on the set of columns
/// still available. Exponential in `n`; keep `n` small.
pub fn cofactor_det(m: &MatrixQ) -> Rational {
    assert!(m.is_square());
    let n = m.rows();
    assert!(n <= 20, "cofactor oracle is for small matrices");
    let full = (1u32 << n) - 1;
    let mut memo = HashMap::new();
    expand(m, 0, full, &mut memo)
}

fn expand(m: &MatrixQ, row: usize, cols: u32, memo: &mut HashMap<u32, Rational>) -> Rational {
    if cols == 0 {
        return Rational::from_integer(1.into());
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut total = Rational::zero();
    let mut position = 0;
    for j in 0..m.cols() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let a = &m[(row, j)];
        if !a.is_zero() {
            let minor = expand(m, row + 1, cols & !(1 << j), memo);
            let term = a * minor;
            if position % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        position += 1;
    }
    memo.insert(cols, total.clone());
    total
}
