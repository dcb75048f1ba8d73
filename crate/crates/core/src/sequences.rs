//! The poly-Cauchy family (numbers, polynomials and shifted numbers of both
//! kinds, any integer index `k`), higher-order harmonic numbers and Bell
//! polynomials.
//!
//! The Stirling-sum formulas are the production path. The `*_via_series`
//! functions expand the defining generating functions with truncated power
//! series and serve as an independent oracle.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactnum::{binomial, factorial, PowerSeries, RatPolynomial, Rational};
use crate::stirling::r_stirling_row;
use crate::Kind;

fn first_kind_row(n: usize) -> Vec<BigUint> {
    r_stirling_row(Kind::First, n, 0)
}

/// Sign applied to `[n,m]` in the explicit formulas: `(-1)^(n-m)` for the
/// first kind and `(-1)^n` for the second.
fn kind_sign(kind: Kind, n: usize, m: usize) -> Rational {
    match kind {
        Kind::First => Rational::sign((n - m) as i64),
        Kind::Second => Rational::sign(n as i64),
    }
}

fn shifted_sum(kind: Kind, n: usize, k: i64, alpha: &Rational) -> Result<Rational> {
    first_kind_row(n)
        .iter()
        .enumerate()
        .filter(|(_, s)| !num_traits::Zero::is_zero(*s))
        .map(|(m, s)| {
            let denom = alpha + Rational::from(m);
            Ok(kind_sign(kind, n, m) * Rational::from(s) * Rational::inv_pow(&denom, k)?)
        })
        .sum()
}

/// `c_n^(k) = sum_{l=1}^{n} (-1)^(n-l) [n,l] / (l+1)^k`, and `c_0^(k) = 1`.
pub fn poly_cauchy_first(n: usize, k: i64) -> Rational {
    shifted_sum(Kind::First, n, k, &Rational::one()).expect("l+1 >= 1 has no pole")
}

/// `hat c_n^(k) = (-1)^n sum_{m=0}^{n} [n,m] / (m+1)^k`.
pub fn poly_cauchy_second(n: usize, k: i64) -> Rational {
    shifted_sum(Kind::Second, n, k, &Rational::one()).expect("m+1 >= 1 has no pole")
}

pub fn poly_cauchy(kind: Kind, n: usize, k: i64) -> Rational {
    match kind {
        Kind::First => poly_cauchy_first(n, k),
        Kind::Second => poly_cauchy_second(n, k),
    }
}

/// Poly-Cauchy polynomial in `z`:
/// `sum_m [n,m] sign * sum_{i=0}^{m} C(m,i) z^(m-i) / (i+1)^k`.
pub fn poly_cauchy_poly(kind: Kind, n: usize, k: i64) -> RatPolynomial {
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (m, s) in first_kind_row(n).iter().enumerate() {
        if num_traits::Zero::is_zero(s) {
            continue;
        }
        let weight = kind_sign(kind, n, m) * Rational::from(s);
        for i in 0..=m {
            let term = binomial(m as i64, i as i64)
                * Rational::inv_pow(&Rational::from(i + 1), k).expect("i+1 >= 1");
            coeffs[m - i] += &weight * &term;
        }
    }
    RatPolynomial::new(coeffs)
}

/// Shifted poly-Cauchy number `c_{n,alpha}^(k)` / `hat c_{n,alpha}^(k)` from
/// its Stirling-sum expression. `alpha` must be positive.
pub fn shifted_poly_cauchy(kind: Kind, n: usize, k: i64, alpha: &Rational) -> Result<Rational> {
    if !alpha.is_positive() {
        return Err(invalid(format!(
            "shift alpha must be positive, got {alpha}"
        )));
    }
    shifted_sum(kind, n, k, alpha)
}

/// `n! [x^n]` of `(1+x)^z Lif_k(log(1+x))` (first kind) or
/// `Lif_k(-log(1+x)) / (1+x)^z` (second kind), for every `n <= order`.
pub fn poly_cauchy_series(kind: Kind, k: i64, z: &Rational, order: usize) -> Vec<Rational> {
    let log = PowerSeries::log1p(order);
    let (inner, sign) = match kind {
        Kind::First => (log, 1),
        Kind::Second => (log.neg(), -1),
    };
    let series = PowerSeries::lif(k, order)
        .compose(&inner)
        .expect("log(1+x) has zero constant term")
        .scale_binomial(z, sign)
        .expect("sign is +-1");
    scale_by_factorials(series)
}

/// Series oracle for a single index: expands to order `n` and reads off
/// `n!` times the `x^n` coefficient.
pub fn poly_cauchy_via_series(kind: Kind, n: usize, k: i64, z: &Rational) -> Rational {
    poly_cauchy_series(kind, k, z, n).swap_remove(n)
}

/// Series oracle for the shifted numbers:
/// `n! [x^n] sum_m (+-log(1+x))^m / (m! (m+alpha)^k)`.
pub fn shifted_poly_cauchy_via_series(
    kind: Kind,
    n: usize,
    k: i64,
    alpha: &Rational,
) -> Result<Rational> {
    if !alpha.is_positive() {
        return Err(invalid(format!(
            "shift alpha must be positive, got {alpha}"
        )));
    }
    let log = PowerSeries::log1p(n);
    let inner = match kind {
        Kind::First => log,
        Kind::Second => log.neg(),
    };
    let series = PowerSeries::lif_shifted(k, alpha, n)?.compose(&inner)?;
    Ok(scale_by_factorials(series).swap_remove(n))
}

fn scale_by_factorials(series: PowerSeries) -> Vec<Rational> {
    let mut f = Rational::one();
    series
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            if n > 0 {
                f = &f * &Rational::from(n);
            }
            c * &f
        })
        .collect()
}

/// Higher-order harmonic number `H_n^(k) = sum_{i=1}^{n} 1/i^k`.
pub fn harmonic(n: usize, k: i64) -> Rational {
    (1..=n)
        .map(|i| Rational::inv_pow(&Rational::from(i), k).expect("i >= 1"))
        .sum()
}

/// Arguments `t_1, t_2, ...` of a Bell polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BellArgs(pub Vec<Rational>);

impl BellArgs {
    /// `t_j = H_b^(j) - H_a^(j)` for `j = 1..=len`.
    pub fn harmonic_differences(b: usize, a: usize, len: usize) -> Self {
        BellArgs(
            (1..=len as i64)
                .map(|j| harmonic(b, j) - harmonic(a, j))
                .collect(),
        )
    }

    fn require(&self, i: usize) -> Result<()> {
        if self.0.len() < i {
            return Err(invalid(format!(
                "Bell polynomial of index {i} needs {i} arguments, got {}",
                self.0.len()
            )));
        }
        Ok(())
    }
}

/// Standard complete Bell polynomial: `i!` times the `x^i` coefficient of
/// `exp(sum_j t_j x^j / j!)`, via
/// `B_{m+1} = sum_{j=0}^{m} C(m,j) t_{j+1} B_{m-j}`.
pub fn complete_bell(t: &BellArgs, i: usize) -> Result<Rational> {
    t.require(i)?;
    let mut values = vec![Rational::one()];
    for m in 0..i {
        let next = (0..=m)
            .map(|j| binomial(m as i64, j as i64) * &t.0[j] * &values[m - j])
            .sum();
        values.push(next);
    }
    Ok(values.swap_remove(i))
}

/// `Omega_i(t)`: `i!` times the `x^i` coefficient of `exp(sum_j t_j x^j / j)`,
/// equivalently
/// `sum_{a_1 + 2a_2 + ... + i a_i = i} i!/(a_1!...a_i!) prod_j (t_j/j)^(a_j)`.
///
/// This is the normalisation under which the harmonic-number identity holds;
/// it equals the complete Bell polynomial at `u_j = (j-1)! t_j`.
pub fn bell_omega(t: &BellArgs, i: usize) -> Result<Rational> {
    t.require(i)?;
    let rescaled = t.0[..i]
        .iter()
        .enumerate()
        .map(|(j, tj)| tj * &Rational::from(factorial(j as u64)))
        .collect();
    complete_bell(&BellArgs(rescaled), i)
}

/// Compares `i! m C(m+n, n) sum_k (-1)^k C(n,k) / (m+k)^(i+1)` with
/// `Omega_i` at `t_j = H_{m+n}^(j) - H_{m-1}^(j)`.
pub fn harmonic_bell_identity(m: usize, n: usize, i: usize) -> Result<bool> {
    if m == 0 {
        return Err(invalid("harmonic/Bell identity needs m >= 1"));
    }
    let (lhs, rhs) = harmonic_bell_sides(m, n, i);
    Ok(lhs == rhs)
}

pub(crate) fn harmonic_bell_sides(m: usize, n: usize, i: usize) -> (Rational, Rational) {
    let alt: Rational = (0..=n)
        .map(|k| {
            Rational::sign(k as i64)
                * binomial(n as i64, k as i64)
                * Rational::inv_pow(&Rational::from(m + k), i as i64 + 1).expect("m >= 1")
        })
        .sum();
    let lhs = Rational::from(factorial(i as u64))
        * Rational::from(m)
        * binomial((m + n) as i64, n as i64)
        * alt;
    let args = BellArgs::harmonic_differences(m + n, m - 1, i);
    let rhs = bell_omega(&args, i).expect("exactly i arguments");
    (lhs, rhs)
}

/// Which member of the poly-Cauchy family to evaluate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Number,
    Polynomial(Rational),
    Shifted(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyCauchySpec {
    pub kind: Kind,
    pub k: i64,
    pub variant: Variant,
}

impl PolyCauchySpec {
    pub fn new(kind: Kind, k: i64, variant: Variant) -> Result<Self> {
        if let Variant::Shifted(alpha) = &variant {
            if !alpha.is_positive() {
                return Err(invalid(format!(
                    "shift alpha must be positive, got {alpha}"
                )));
            }
        }
        Ok(PolyCauchySpec { kind, k, variant })
    }

    pub fn value(&self, n: usize) -> Rational {
        match &self.variant {
            Variant::Number => poly_cauchy(self.kind, n, self.k),
            Variant::Polynomial(z) => poly_cauchy_poly(self.kind, n, self.k).eval(z),
            Variant::Shifted(alpha) => {
                shifted_poly_cauchy(self.kind, n, self.k, alpha).expect("alpha validated")
            }
        }
    }

    pub fn values(&self, count: usize) -> Vec<Rational> {
        (0..count).map(|n| self.value(n)).collect()
    }
}

/// `H_n^(k)` with `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicSpec {
    pub n: usize,
    pub k: i64,
}

impl HarmonicSpec {
    pub fn new(n: usize, k: i64) -> Result<Self> {
        if k < 1 {
            return Err(invalid(format!("harmonic order must be >= 1, got {k}")));
        }
        Ok(HarmonicSpec { n, k })
    }

    pub fn value(&self) -> Rational {
        harmonic(self.n, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn first_kind_values() {
        assert_eq!(poly_cauchy_first(2, 1), q("-1/6"));
        for k in -4..=4 {
            assert_eq!(poly_cauchy_first(0, k), q("1"));
            assert_eq!(poly_cauchy_second(0, k), q("1"));
        }
        assert_eq!(poly_cauchy_first(3, -1), q("-1"));
        assert_eq!(poly_cauchy_first(2, -1), q("1"));
        assert_eq!(
            (0..4).map(|n| poly_cauchy_first(n, -1)).collect::<Vec<_>>(),
            vec![q("1"), q("2"), q("1"), q("-1")]
        );
    }

    #[test]
    fn second_kind_values() {
        assert_eq!(poly_cauchy_second(1, 1), q("-1/2"));
        assert_eq!(poly_cauchy_second(2, 1), q("5/6"));
    }

    #[test]
    fn polynomials() {
        let p = poly_cauchy_poly(Kind::First, 1, 1);
        assert_eq!(p.coeffs(), &[q("1/2"), q("1")]);
        assert_eq!(p.eval(&q("1")), q("3/2"));
        let p2 = poly_cauchy_poly(Kind::Second, 1, 1);
        assert_eq!(p2.coeffs(), &[q("-1/2"), q("-1")]);
        for kind in [Kind::First, Kind::Second] {
            for n in 0..=10 {
                for k in -3..=3 {
                    let p = poly_cauchy_poly(kind, n, k);
                    assert!(p.degree().is_none_or(|d| d <= n));
                    assert_eq!(p.eval(&Rational::zero()), poly_cauchy(kind, n, k));
                }
            }
        }
    }

    #[test]
    fn shifted_values() {
        assert_eq!(
            shifted_poly_cauchy(Kind::First, 1, 1, &q("1/2")).unwrap(),
            q("2/3")
        );
        assert_eq!(
            shifted_poly_cauchy(Kind::Second, 1, 1, &q("2")).unwrap(),
            q("-1/3")
        );
        assert!(shifted_poly_cauchy(Kind::First, 1, 1, &q("0")).is_err());
        assert!(shifted_poly_cauchy(Kind::First, 1, 1, &q("-1/2")).is_err());
        for kind in [Kind::First, Kind::Second] {
            for n in 0..=15 {
                for k in -3..=4 {
                    assert_eq!(
                        shifted_poly_cauchy(kind, n, k, &Rational::one()).unwrap(),
                        poly_cauchy(kind, n, k)
                    );
                }
            }
        }
    }

    #[test]
    fn shifted_series_oracle() {
        for kind in [Kind::First, Kind::Second] {
            for alpha in ["1/2", "1", "3/2", "7/3"] {
                for n in 0..=8 {
                    for k in -2..=3 {
                        let a = q(alpha);
                        assert_eq!(
                            shifted_poly_cauchy(kind, n, k, &a).unwrap(),
                            shifted_poly_cauchy_via_series(kind, n, k, &a).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn series_oracle_examples() {
        assert_eq!(
            poly_cauchy_via_series(Kind::First, 2, 1, &q("0")),
            q("-1/6")
        );
        assert_eq!(
            poly_cauchy_via_series(Kind::Second, 2, 1, &q("0")),
            q("5/6")
        );
        for k in -2..=2 {
            assert_eq!(poly_cauchy_via_series(Kind::First, 0, k, &q("7/2")), q("1"));
        }
    }

    #[test]
    fn polynomial_matches_series_oracle() {
        for kind in [Kind::First, Kind::Second] {
            for k in -3..=3 {
                for z in ["-1", "1/2", "1", "2"] {
                    let z = q(z);
                    let oracle = poly_cauchy_series(kind, k, &z, 12);
                    for (n, expected) in oracle.iter().enumerate() {
                        assert_eq!(
                            &poly_cauchy_poly(kind, n, k).eval(&z),
                            expected,
                            "{kind:?} n={n} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn k_one_reduces_to_cauchy_numbers() {
        let order = 20;
        // x / log(1+x) and x / ((1+x) log(1+x))
        let log_over_x =
            PowerSeries::from_coeffs(order, PowerSeries::log1p(order + 1).coeffs()[1..].to_vec());
        let first = log_over_x.recip().unwrap();
        let second = first.scale_binomial(&Rational::one(), -1).unwrap();
        let first = scale_by_factorials(first);
        let second = scale_by_factorials(second);
        for n in 0..=order {
            assert_eq!(poly_cauchy_first(n, 1), first[n], "n={n}");
            assert_eq!(poly_cauchy_second(n, 1), second[n], "n={n}");
        }
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(3, 1), q("11/6"));
        assert_eq!(harmonic(0, 3), q("0"));
        assert_eq!(harmonic(2, 2), q("5/4"));
        assert_eq!(harmonic(3, 2), q("49/36"));
        assert!(HarmonicSpec::new(3, 0).is_err());
        for k in 1..4 {
            for n in 1..10 {
                assert!(harmonic(n, k) > harmonic(n - 1, k));
            }
        }
    }

    #[test]
    fn bell_small_cases() {
        let t = BellArgs(vec![q("3"), q("5/7"), q("-2")]);
        assert_eq!(bell_omega(&t, 0).unwrap(), q("1"));
        assert_eq!(bell_omega(&BellArgs::default(), 0).unwrap(), q("1"));
        assert_eq!(bell_omega(&t, 1).unwrap(), q("3"));
        assert_eq!(bell_omega(&t, 2).unwrap(), q("9") + q("5/7"));
        // Omega_3 = t1^3 + 3 t1 t2 + 2 t3, complete Bell has t3 instead
        assert_eq!(bell_omega(&t, 3).unwrap(), q("27") + q("45/7") - q("4"));
        assert_eq!(complete_bell(&t, 3).unwrap(), q("27") + q("45/7") - q("2"));
        assert!(bell_omega(&t, 4).is_err());
    }

    /// Direct enumeration of `a_1 + 2 a_2 + ... + i a_i = i`.
    fn partition_sum(t: &[Rational], i: usize) -> Rational {
        fn go(
            t: &[Rational],
            i: usize,
            j: usize,
            rem: usize,
            acc: &mut Vec<usize>,
            total: &mut Rational,
        ) {
            if j > i {
                if rem == 0 {
                    let mut term = Rational::from(factorial(i as u64));
                    for (idx, &a) in acc.iter().enumerate() {
                        let jj = idx + 1;
                        let base = &t[idx] / &Rational::from(jj);
                        term = term * base.pow(a as i64).unwrap()
                            / Rational::from(factorial(a as u64));
                    }
                    *total += term;
                }
                return;
            }
            for a in 0..=rem / j {
                acc.push(a);
                go(t, i, j + 1, rem - j * a, acc, total);
                acc.pop();
            }
        }
        let mut total = Rational::zero();
        go(t, i, 1, i, &mut Vec::new(), &mut total);
        total
    }

    #[test]
    fn omega_matches_partition_sum() {
        let t: Vec<Rational> = ["2", "3/5", "-1/3", "7", "1/2", "4"]
            .iter()
            .map(|s| q(s))
            .collect();
        for i in 0..=6 {
            assert_eq!(
                bell_omega(&BellArgs(t.clone()), i).unwrap(),
                partition_sum(&t, i),
                "i={i}"
            );
        }
    }

    #[test]
    fn complete_bell_matches_exp_series() {
        let t: Vec<Rational> = ["1/2", "-3", "2/7", "5", "-1/4", "1"]
            .iter()
            .map(|s| q(s))
            .collect();
        let order = t.len();
        let mut inner = vec![Rational::zero()];
        for (j, tj) in t.iter().enumerate() {
            inner.push(tj / &Rational::from(factorial(j as u64 + 1)));
        }
        let e = PowerSeries::exp(order)
            .compose(&PowerSeries::from_coeffs(order, inner))
            .unwrap();
        let scaled = scale_by_factorials(e);
        for (i, want) in scaled.iter().enumerate() {
            assert_eq!(&complete_bell(&BellArgs(t.clone()), i).unwrap(), want);
        }
    }

    #[test]
    fn harmonic_bell_examples() {
        assert!(harmonic_bell_identity(1, 0, 0).unwrap());
        let (lhs, rhs) = harmonic_bell_sides(1, 1, 1);
        assert_eq!((lhs, rhs), (q("3/2"), q("3/2")));
        for m in 1..=8 {
            for n in 0..=8 - m {
                for i in 0..=4 {
                    assert!(
                        harmonic_bell_identity(m, n, i).unwrap(),
                        "m={m} n={n} i={i}"
                    );
                }
            }
        }
        assert!(harmonic_bell_identity(0, 1, 1).is_err());
    }

    #[test]
    fn spec_dispatch() {
        let s = PolyCauchySpec::new(Kind::First, 1, Variant::Number).unwrap();
        assert_eq!(s.values(3), vec![q("1"), q("1/2"), q("-1/6")]);
        let p = PolyCauchySpec::new(Kind::First, 1, Variant::Polynomial(q("0"))).unwrap();
        assert_eq!(p.values(6), s.values(6));
        let sh = PolyCauchySpec::new(Kind::Second, 2, Variant::Shifted(q("1"))).unwrap();
        assert_eq!(
            sh.values(6),
            PolyCauchySpec::new(Kind::Second, 2, Variant::Number)
                .unwrap()
                .values(6)
        );
        assert!(PolyCauchySpec::new(Kind::First, 1, Variant::Shifted(q("0"))).is_err());
    }
}
