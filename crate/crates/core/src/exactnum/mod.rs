//! Exact scalars, polynomials in `z`, and truncated power series over the
//! rationals. Truncation order is always an explicit argument.

mod poly;
mod rational;
mod series;

pub use poly::RatPolynomial;
pub use rational::{ArithOp, Rational};
pub use series::PowerSeries;

/// Binomial coefficient `C(n, k)` as a rational, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from(acc)
}

pub fn factorial(n: u64) -> num_bigint::BigUint {
    (1..=n).fold(num_bigint::BigUint::from(1u32), |acc, i| acc * i)
}
