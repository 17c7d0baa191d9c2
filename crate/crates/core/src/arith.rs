//! Scalar kernels: big integers, reduced rationals and the binomial family.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Reduced fraction with a positive denominator. Every constructor and
/// arithmetic operation of [`BigRational`] keeps it canonical.
pub type Rational = BigRational;

/// `C(n, k)` with the convention that it vanishes for `k < 0` or `k > n`.
///
/// Fails only for negative `n`.
pub fn binomial(n: i64, k: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::NegativeBinomial(n));
    }
    Ok(choose(n as u64, k))
}

/// Infallible form of [`binomial`] for a nonnegative top argument.
///
/// Uses the multiplicative recurrence `C(m, i) = C(m, i - 1) * (m - i + 1) / i`
/// on the shorter side, where every division is exact.
pub fn choose(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Integer::one();
    for i in 1..=k {
        acc *= n - k + i;
        let (q, r) = acc.div_rem(&Integer::from(i));
        debug_assert!(r.is_zero());
        acc = q;
    }
    acc
}

/// `C(2m, m)`. Even for every `m > 0`.
pub fn central_binomial(m: u64) -> Integer {
    choose(2 * m, m as i64)
}

fn factorial(n: u64) -> Integer {
    (2..=n).fold(Integer::one(), |acc, i| acc * i)
}

/// Super Catalan number `(2m)! (2n)! / (m! n! (m+n)!)`.
///
/// # Panics
///
/// If the division leaves a remainder. That cannot happen for correct
/// factorials, so it would point at a bug here rather than bad input.
pub fn super_catalan(m: u64, n: u64) -> Integer {
    let num = factorial(2 * m) * factorial(2 * n);
    let den = factorial(m) * factorial(n) * factorial(m + n);
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "super Catalan S({m}, {n}) is not integral");
    q
}

/// Builds a canonical rational from a numerator and a nonzero denominator.
pub fn rat_make(num: Integer, den: Integer) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// Returns the value as an integer if the denominator is one.
pub fn as_integer(q: &Rational) -> Option<Integer> {
    q.is_integer().then(|| q.numer().clone())
}

/// Number of bits in the magnitude of an integer.
pub fn bit_len(z: &Integer) -> u64 {
    z.abs().bits()
}
