use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;

/// Dense polynomial in `z` over the rationals. Index `i` holds the
/// coefficient of `z^i`; trailing zeros are always stripped, so the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<Rational>", from = "Vec<Rational>")]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        RatPolynomial::new(vec![c])
    }

    /// `c * z^power`
    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        RatPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    pub fn add(&self, other: &RatPolynomial) -> RatPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        RatPolynomial::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || other.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

impl From<Vec<Rational>> for RatPolynomial {
    fn from(coeffs: Vec<Rational>) -> Self {
        RatPolynomial::new(coeffs)
    }
}

impl From<RatPolynomial> for Vec<Rational> {
    fn from(p: RatPolynomial) -> Self {
        p.coeffs
    }
}

/// Renders highest degree first, e.g. `z^2 - 1/2*z + 3`.
impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = !c.is_positive();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = mag == Rational::one();
            match i {
                0 => write!(f, "{mag}")?,
                _ if unit => {}
                _ => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        let p = RatPolynomial::new(vec![q("1"), q("0"), q("0")]);
        assert_eq!(p.degree(), Some(0));
        let z = RatPolynomial::new(vec![q("0"), q("0")]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert!(z.coeffs().is_empty());
    }

    #[test]
    fn eval_and_mul() {
        // (z + 1/2)(z - 1) = z^2 - 1/2 z - 1/2
        let a = RatPolynomial::new(vec![q("1/2"), q("1")]);
        let b = RatPolynomial::new(vec![q("-1"), q("1")]);
        let p = a.mul(&b);
        assert_eq!(p.coeffs(), &[q("-1/2"), q("-1/2"), q("1")]);
        assert_eq!(p.eval(&q("2")), q("5/2"));
        assert_eq!(p.to_string(), "z^2 - 1/2*z - 1/2");
        assert_eq!(a.add(&b).to_string(), "2*z - 1/2");
        assert_eq!(RatPolynomial::zero().to_string(), "0");
    }
}
