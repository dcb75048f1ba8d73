//! Binomial, Stirling and r-Stirling sequence transforms with their inverses.
//!
//! Sequences are finite prefixes. Indices below a sequence's `offset` are
//! read as zero. The r-Stirling inverse cannot recover indices `n < r`
//! (both triangles vanish there); such outputs are flagged through
//! `undetermined_below` and stored as zero.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactnum::{binomial, Rational};
use crate::stirling::r_stirling_i;
use crate::Kind;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RatSequence {
    /// Index of the first stored term.
    pub offset: usize,
    pub terms: Vec<Rational>,
    /// Indices strictly below this value are not determined.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub undetermined_below: usize,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

impl RatSequence {
    pub fn new(terms: Vec<Rational>) -> Self {
        RatSequence {
            offset: 0,
            terms,
            undetermined_below: 0,
        }
    }

    pub fn with_offset(offset: usize, terms: Vec<Rational>) -> Self {
        RatSequence {
            offset,
            terms,
            undetermined_below: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term at absolute index `n`, or `None` when outside the stored range
    /// or not determined.
    pub fn get(&self, n: usize) -> Option<&Rational> {
        if n < self.undetermined_below {
            return None;
        }
        n.checked_sub(self.offset).and_then(|i| self.terms.get(i))
    }

    pub fn is_determined(&self, n: usize) -> bool {
        n >= self.undetermined_below
    }

    /// `(index, term)` pairs, `None` for undetermined terms.
    pub fn indexed(&self) -> impl Iterator<Item = (usize, Option<&Rational>)> {
        self.terms.iter().enumerate().map(|(i, t)| {
            (
                self.offset + i,
                self.is_determined(self.offset + i).then_some(t),
            )
        })
    }

    fn value(&self, n: usize) -> Rational {
        self.get(n).cloned().unwrap_or_default()
    }

    fn require_determined_from(&self, first_used: usize) -> Result<()> {
        let used_undetermined = self.undetermined_below.min(self.offset + self.len());
        if used_undetermined > self.offset.max(first_used) {
            return Err(invalid(format!(
                "input terms below index {} are undetermined but required by this transform",
                self.undetermined_below
            )));
        }
        Ok(())
    }

    /// `b_n = sum_{k >= first_used} weight(n, k) a_k` over the stored range.
    fn map(&self, first_used: usize, weight: impl Fn(i64, i64) -> Rational) -> Result<RatSequence> {
        self.require_determined_from(first_used)?;
        let terms = (self.offset..self.offset + self.len())
            .map(|n| {
                (first_used.max(self.offset)..=n)
                    .map(|k| {
                        let a = self.value(k);
                        if a.is_zero() {
                            Rational::zero()
                        } else {
                            weight(n as i64, k as i64) * a
                        }
                    })
                    .sum()
            })
            .collect();
        Ok(RatSequence::with_offset(self.offset, terms))
    }
}

/// `b_n = sum C(n,k) a_k`; inverse `a_n = sum (-1)^(n-k) C(n,k) b_k`.
pub fn binomial_transform(a: &RatSequence, invert: bool) -> Result<RatSequence> {
    a.map(0, |n, k| {
        let c = binomial(n, k);
        if invert {
            Rational::sign(n - k) * c
        } else {
            c
        }
    })
}

/// `b_n = sum [n,k] a_k`; inverse `a_n = sum (-1)^(n-k) {n,k} b_k`.
pub fn stirling_transform(a: &RatSequence, invert: bool) -> Result<RatSequence> {
    a.map(0, |n, k| {
        if invert {
            Rational::sign(n - k) * r_stirling_i(Kind::Second, n, k, 0)
        } else {
            r_stirling_i(Kind::First, n, k, 0)
        }
    })
}

/// `b_n = sum {n,k}_r a_k`; inverse `a_n = sum (-1)^(n-k) [n,k]_r b_k`,
/// exact on indices `n >= r`. The inverse marks indices `n < r` undetermined.
pub fn r_stirling_transform(a: &RatSequence, r: usize, invert: bool) -> Result<RatSequence> {
    let ri = r as i64;
    let mut out = a.map(r, |n, k| {
        if invert {
            Rational::sign(n - k) * r_stirling_i(Kind::First, n, k, ri)
        } else {
            r_stirling_i(Kind::Second, n, k, ri)
        }
    })?;
    if invert {
        out.undetermined_below = r;
    }
    Ok(out)
}

/// Index-shifted pair `b_n = sum {n+1,k+1}_r a_k`,
/// `a_n = sum (-1)^(n-k) [n+1,k+1]_r b_k`, exact on `n >= r-1`.
pub fn shifted_r_stirling_transform(
    a: &RatSequence,
    r: usize,
    invert: bool,
) -> Result<RatSequence> {
    let ri = r as i64;
    let first = r.saturating_sub(1);
    let mut out = a.map(first, |n, k| {
        if invert {
            Rational::sign(n - k) * r_stirling_i(Kind::First, n + 1, k + 1, ri)
        } else {
            r_stirling_i(Kind::Second, n + 1, k + 1, ri)
        }
    })?;
    if invert {
        out.undetermined_below = first;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::poly_cauchy_first;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn fib(n: usize) -> i64 {
        let (mut a, mut b) = (0i64, 1i64);
        for _ in 0..n {
            (a, b) = (b, a + b);
        }
        a
    }

    #[test]
    fn binomial_fibonacci() {
        let a = RatSequence::new((0..12).map(|n| Rational::from(fib(n))).collect());
        let b = binomial_transform(&a, false).unwrap();
        assert_eq!(
            b.terms,
            (0..12)
                .map(|n| Rational::from(fib(2 * n)))
                .collect::<Vec<_>>()
        );
        // (-1)^n F_n -> -F_n
        let a = RatSequence::new(
            (0..12)
                .map(|n| Rational::sign(n as i64) * Rational::from(fib(n)))
                .collect(),
        );
        let b = binomial_transform(&a, false).unwrap();
        assert_eq!(
            b.terms,
            (0..12).map(|n| -Rational::from(fib(n))).collect::<Vec<_>>()
        );
    }

    #[test]
    fn binomial_of_delta_is_ones() {
        let mut t = vec![Rational::zero(); 8];
        t[0] = Rational::one();
        let b = binomial_transform(&RatSequence::new(t), false).unwrap();
        assert_eq!(b.terms, vec![Rational::one(); 8]);
    }

    #[test]
    fn stirling_examples() {
        // a_n = 2^n -> (n+1)!
        let a = RatSequence::new((0..10).map(|n| Rational::from(2).pow(n).unwrap()).collect());
        let b = stirling_transform(&a, false).unwrap();
        let mut f = 1i64;
        for (n, v) in b.terms.iter().enumerate() {
            f *= n as i64 + 1;
            assert_eq!(v, &Rational::from(f));
        }
        // a_n = C(n, 2) -> [n+1, 3]
        let a = RatSequence::new((0..10).map(|n| binomial(n, 2)).collect());
        let b = stirling_transform(&a, false).unwrap();
        for (n, v) in b.terms.iter().enumerate() {
            let expected = r_stirling_i(Kind::First, n as i64 + 1, 3, 0);
            assert_eq!(v, &expected);
        }
    }

    #[test]
    fn r_stirling_of_poly_cauchy() {
        let a = RatSequence::new((0..=8).map(|n| poly_cauchy_first(n, 1)).collect());
        let b = r_stirling_transform(&a, 2, false).unwrap();
        assert_eq!(b.get(5).unwrap(), &"-1/30".parse::<Rational>().unwrap());
        assert!(b.get(0).unwrap().is_zero() && b.get(1).unwrap().is_zero());
    }

    #[test]
    fn r_stirling_inverse_marks_low_indices() {
        let a = RatSequence::new(ints(&[3, 1, 4, 1, 5, 9]));
        let back =
            r_stirling_transform(&r_stirling_transform(&a, 2, false).unwrap(), 2, true).unwrap();
        assert_eq!(back.get(0), None);
        assert_eq!(back.get(1), None);
        assert_eq!(back.terms[2..], a.terms[2..]);
        let marks: Vec<bool> = back.indexed().map(|(_, t)| t.is_some()).collect();
        assert_eq!(marks, vec![false, false, true, true, true, true]);
    }

    #[test]
    fn r_zero_is_classical_pair() {
        let a = RatSequence::new(ints(&[2, -1, 0, 7, 3, 3, -8]));
        assert_eq!(r_stirling_transform(&a, 0, false).unwrap().terms, {
            // {n,k}_0 = {n,k}
            a.map(0, |n, k| r_stirling_i(Kind::Second, n, k, 0))
                .unwrap()
                .terms
        });
        let inv = r_stirling_transform(&a, 0, true).unwrap();
        assert_eq!(inv.undetermined_below, 0);
        assert_eq!(r_stirling_transform(&inv, 0, false).unwrap().terms, a.terms);
    }

    #[test]
    fn offset_reads_lower_indices_as_zero() {
        let a = RatSequence::with_offset(2, ints(&[1, 1, 1]));
        let b = binomial_transform(&a, false).unwrap();
        assert_eq!(b.offset, 2);
        // b_2 = C(2,2), b_3 = C(3,2)+C(3,3), b_4 = C(4,2)+C(4,3)+C(4,4)
        assert_eq!(b.terms, ints(&[1, 4, 11]));
        assert_eq!(binomial_transform(&b, true).unwrap(), a);
    }

    #[test]
    fn undetermined_input_is_rejected_where_needed() {
        let a = RatSequence::new(ints(&[1, 2, 3, 4, 5]));
        let inv = r_stirling_transform(&a, 2, true).unwrap();
        assert!(binomial_transform(&inv, false).is_err());
        assert!(r_stirling_transform(&inv, 2, false).is_ok());
        assert!(r_stirling_transform(&inv, 1, false).is_err());
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn round_trips(terms in prop::collection::vec(rational(), 0..=15), r in 0usize..=4) {
            let a = RatSequence::new(terms);
            prop_assert_eq!(&binomial_transform(&binomial_transform(&a, false).unwrap(), true).unwrap(), &a);
            prop_assert_eq!(&stirling_transform(&stirling_transform(&a, false).unwrap(), true).unwrap(), &a);
            let back = r_stirling_transform(&r_stirling_transform(&a, r, false).unwrap(), r, true).unwrap();
            for n in r..a.len() {
                prop_assert_eq!(back.get(n), a.get(n));
            }
            let back = shifted_r_stirling_transform(&shifted_r_stirling_transform(&a, r, false).unwrap(), r, true).unwrap();
            for n in r.saturating_sub(1)..a.len() {
                prop_assert_eq!(back.get(n), a.get(n));
            }
        }

        #[test]
        fn linearity(x in prop::collection::vec(rational(), 10), y in prop::collection::vec(rational(), 10),
                     alpha in rational(), beta in rational(), r in 0usize..=4, invert in any::<bool>()) {
            let combo = RatSequence::new(x.iter().zip(&y).map(|(a, b)| &alpha * a + &beta * b).collect());
            let (xs, ys) = (RatSequence::new(x), RatSequence::new(y));
            type T = fn(&RatSequence, bool) -> Result<RatSequence>;
            let fns: [T; 2] = [binomial_transform, stirling_transform];
            for f in fns {
                let lhs = f(&combo, invert).unwrap();
                let (fx, fy) = (f(&xs, invert).unwrap(), f(&ys, invert).unwrap());
                let rhs: Vec<Rational> = fx.terms.iter().zip(&fy.terms).map(|(a, b)| &alpha * a + &beta * b).collect();
                prop_assert_eq!(lhs.terms, rhs);
            }
            let lhs = r_stirling_transform(&combo, r, invert).unwrap();
            let (fx, fy) = (r_stirling_transform(&xs, r, invert).unwrap(), r_stirling_transform(&ys, r, invert).unwrap());
            let rhs: Vec<Rational> = fx.terms.iter().zip(&fy.terms).map(|(a, b)| &alpha * a + &beta * b).collect();
            prop_assert_eq!(lhs.terms, rhs);
        }
    }
}
