use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Truncated formal power series: coefficients of `x^0..=x^order`.
/// Products and compositions are exact modulo `x^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` terms.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::from_coeffs(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::from_coeffs(order, vec![Rational::one()])
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        PowerSeries::from_coeffs(order, vec![Rational::zero(), Rational::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `log(1+x) = x - x^2/2 + x^3/3 - ...`
    pub fn log1p(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|n| match n {
                0 => Rational::zero(),
                _ => Rational::sign(n as i64 + 1) * Rational::new(1, n).expect("n > 0"),
            })
            .collect();
        PowerSeries { order, coeffs }
    }

    /// `exp(x)`
    pub fn exp(order: usize) -> Self {
        PowerSeries::from_coeffs(order, inverse_factorials(order))
    }

    /// Polyfactorial `Lif_k(z) = sum z^n / (n! (n+1)^k)`, any integer `k`.
    pub fn lif(k: i64, order: usize) -> Self {
        PowerSeries::lif_shifted(k, &Rational::one(), order).expect("shift 1 never hits a pole")
    }

    /// `sum z^n / (n! (n+alpha)^k)`; generating kernel of the shifted
    /// poly-Cauchy numbers. Fails only if some `n + alpha` is zero with `k > 0`.
    pub fn lif_shifted(k: i64, alpha: &Rational, order: usize) -> Result<Self> {
        let coeffs = inverse_factorials(order)
            .into_iter()
            .enumerate()
            .map(|(n, inv_fact)| Ok(inv_fact * Rational::inv_pow(&(alpha + Rational::from(n)), k)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries { order, coeffs })
    }

    /// Binomial series `(1+x)^z = sum C(z,n) x^n` via the falling factorial.
    pub fn binomial(z: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = Rational::one();
        for n in 0..=order {
            coeffs.push(c.clone());
            c = c * (z - Rational::from(n)) / Rational::from(n + 1);
        }
        PowerSeries { order, coeffs }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        self.assert_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        PowerSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        self.assert_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        PowerSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn scale(&self, c: &Rational) -> PowerSeries {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        PowerSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> PowerSeries {
        self.scale(&-Rational::one())
    }

    /// Product truncated at the shared order.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        self.assert_same_order(other);
        let n = self.order;
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries {
            order: n,
            coeffs: out,
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn recip(&self) -> Result<PowerSeries> {
        let c0_inv = self.coeffs[0].recip().map_err(|_| Error::NotInvertible)?;
        let mut out: Vec<Rational> = Vec::with_capacity(self.order + 1);
        out.push(c0_inv.clone());
        for n in 1..=self.order {
            let s: Rational = (1..=n).map(|i| &self.coeffs[i] * &out[n - i]).sum();
            out.push(-(s * &c0_inv));
        }
        Ok(PowerSeries {
            order: self.order,
            coeffs: out,
        })
    }

    /// `self(inner(x))` truncated at the shared order, by Horner's scheme.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        if self.order != inner.order {
            return Err(Error::OrderMismatch(self.order, inner.order));
        }
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let mut acc = PowerSeries::zero(self.order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Multiplies by `(1+x)^z` when `sign = +1` and by `(1+x)^(-z)` when
    /// `sign = -1`.
    pub fn scale_binomial(&self, z: &Rational, sign: i8) -> Result<PowerSeries> {
        let exponent = match sign {
            1 => z.clone(),
            -1 => -z,
            _ => {
                return Err(crate::error::invalid(format!(
                    "sign must be +1 or -1, got {sign}"
                )))
            }
        };
        Ok(self.mul(&PowerSeries::binomial(&exponent, self.order)))
    }

    fn assert_same_order(&self, other: &PowerSeries) {
        assert_eq!(self.order, other.order, "series orders differ");
    }
}

fn inverse_factorials(order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut f = Rational::one();
    for n in 0..=order {
        if n > 0 {
            f = f / Rational::from(n);
        }
        out.push(f.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn qs(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn log1p_mercator() {
        assert_eq!(
            PowerSeries::log1p(3).coeffs(),
            qs(&["0", "1", "-1/2", "1/3"]).as_slice()
        );
        assert_eq!(PowerSeries::log1p(0).coeffs(), qs(&["0"]).as_slice());
        assert_eq!(PowerSeries::log1p(4).coeff(4), q("-1/4"));
    }

    #[test]
    fn lif_values() {
        assert_eq!(
            PowerSeries::lif(1, 2).coeffs(),
            qs(&["1", "1/2", "1/6"]).as_slice()
        );
        assert_eq!(
            PowerSeries::lif(0, 2).coeffs(),
            qs(&["1", "1", "1/2"]).as_slice()
        );
        assert_eq!(
            PowerSeries::lif(-1, 2).coeffs(),
            qs(&["1", "2", "3/2"]).as_slice()
        );
        assert_eq!(PowerSeries::lif(0, 12), PowerSeries::exp(12));
    }

    #[test]
    fn compose_cauchy_kernel() {
        let s = PowerSeries::lif(1, 2)
            .compose(&PowerSeries::log1p(2))
            .unwrap();
        assert_eq!(s.coeffs(), qs(&["1", "1/2", "-1/12"]).as_slice());
        let f = PowerSeries::from_coeffs(3, qs(&["2", "-1", "1/3", "5"]));
        assert_eq!(f.compose(&PowerSeries::x(3)).unwrap(), f);
    }

    #[test]
    fn compose_preconditions() {
        let g = PowerSeries::from_coeffs(2, qs(&["1", "1"]));
        assert_eq!(
            PowerSeries::exp(2).compose(&g),
            Err(Error::NonZeroConstantTerm)
        );
        assert_eq!(
            PowerSeries::exp(2).compose(&PowerSeries::x(3)),
            Err(Error::OrderMismatch(2, 3))
        );
    }

    #[test]
    fn binomial_scaling() {
        let one = PowerSeries::one(2);
        assert_eq!(
            one.scale_binomial(&q("2"), 1).unwrap().coeffs(),
            qs(&["1", "2", "1"]).as_slice()
        );
        let f = PowerSeries::lif(2, 5);
        assert_eq!(f.scale_binomial(&q("0"), 1).unwrap(), f);
        let c = PowerSeries::lif(1, 1)
            .compose(&PowerSeries::log1p(1))
            .unwrap();
        assert_eq!(c.scale_binomial(&q("1"), 1).unwrap().coeff(1), q("3/2"));
        assert!(one.scale_binomial(&q("1"), 0).is_err());
    }

    #[test]
    fn recip_inverts() {
        let f = PowerSeries::log1p(6).add(&PowerSeries::one(6));
        assert_eq!(f.mul(&f.recip().unwrap()), PowerSeries::one(6));
        assert_eq!(PowerSeries::x(3).recip(), Err(Error::NotInvertible));
    }

    /// Untruncated substitution, truncated only at the end.
    fn naive_compose(f: &[Rational], g: &[Rational], order: usize) -> Vec<Rational> {
        let full_mul = |a: &[Rational], b: &[Rational]| {
            let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let mut total = vec![Rational::zero()];
        let mut power = vec![Rational::one()];
        for c in f {
            let term: Vec<Rational> = power.iter().map(|p| p * c).collect();
            if term.len() > total.len() {
                total.resize(term.len(), Rational::zero());
            }
            for (t, x) in total.iter_mut().zip(term) {
                *t += x;
            }
            power = full_mul(&power, g);
        }
        total.resize(order + 1, Rational::zero());
        total
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn compose_matches_substitution(
            order in 0usize..=12,
            f in prop::collection::vec(small_rational(), 13),
            g in prop::collection::vec(small_rational(), 13),
        ) {
            let f = &f[..=order];
            let mut g = g[..=order].to_vec();
            g[0] = Rational::zero();
            let fs = PowerSeries::from_coeffs(order, f.to_vec());
            let gs = PowerSeries::from_coeffs(order, g.clone());
            let got = fs.compose(&gs).unwrap();
            let want = naive_compose(f, &g, order);
            prop_assert_eq!(got.coeffs(), want.as_slice());
        }

        #[test]
        fn integer_binomial_is_repeated_multiplication(z in 0u32..=7, order in 0usize..=10,
            f in prop::collection::vec(small_rational(), 11)) {
            let fs = PowerSeries::from_coeffs(order, f);
            let one_plus_x = PowerSeries::from_coeffs(order, vec![Rational::one(), Rational::one()]);
            let mut expected = fs.clone();
            for _ in 0..z {
                expected = expected.mul(&one_plus_x);
            }
            prop_assert_eq!(fs.scale_binomial(&Rational::from(z), 1).unwrap(), expected);
        }

        #[test]
        fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
            if !b.is_zero() {
                prop_assert_eq!(a.checked_div(&b).unwrap() * &b, a.clone());
            }
        }
    }
}
