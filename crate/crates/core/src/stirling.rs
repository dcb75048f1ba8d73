//! Memoized triangles of r-Stirling numbers of both kinds.
//!
//! Tables grow on demand from the three-term recurrences and are cached per
//! `(kind, r)` in a process-wide store guarded by a reader/writer lock: rows
//! are appended by a single writer, reads run concurrently. The ordinary
//! generating functions and Broder's symmetric-sum formula are provided as
//! independent cross-checks, never as the primary computation.
//!
//! Indices outside the triangle (`m > n`, `n < r`, `m < r`) read as zero.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::exactnum::{PowerSeries, Rational};
use crate::identities::{self, IdentityId, IdentityReport, IntRange, ParamBox};
use crate::Kind;

/// Triangle of `[n,m]_r` (first kind) or `{n,m}_r` (second kind).
/// Row `n` stores `m = 0..=n`.
#[derive(Debug, Clone)]
pub struct TriangleTable {
    kind: Kind,
    r: usize,
    rows: Vec<Vec<BigUint>>,
}

impl TriangleTable {
    pub fn new(kind: Kind, r: usize) -> Self {
        TriangleTable {
            kind,
            r,
            rows: Vec::new(),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of populated rows (rows `0..len` are available).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let i = self.rows.len();
            let row = if i < self.r {
                vec![BigUint::zero(); i + 1]
            } else if i == self.r {
                let mut row = vec![BigUint::zero(); i + 1];
                row[i] = BigUint::one();
                row
            } else {
                let prev = &self.rows[i - 1];
                (0..=i)
                    .map(|m| {
                        let stay = prev.get(m).map_or_else(BigUint::zero, |v| match self.kind {
                            Kind::First => v * (i - 1),
                            Kind::Second => v * m,
                        });
                        let grow = if m > 0 {
                            prev[m - 1].clone()
                        } else {
                            BigUint::zero()
                        };
                        stay + grow
                    })
                    .collect()
            };
            self.rows.push(row);
        }
    }

    pub fn row(&mut self, n: usize) -> &[BigUint] {
        self.extend_to(n);
        &self.rows[n]
    }

    pub fn value(&mut self, n: usize, m: usize) -> BigUint {
        self.row(n).get(m).cloned().unwrap_or_default()
    }

    /// Read-only lookup; `None` when row `n` has not been populated yet.
    pub fn get(&self, n: usize, m: usize) -> Option<BigUint> {
        self.rows
            .get(n)
            .map(|row| row.get(m).cloned().unwrap_or_default())
    }
}

static TABLES: LazyLock<RwLock<HashMap<(Kind, usize), TriangleTable>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn with_row<T>(kind: Kind, r: usize, n: usize, f: impl FnOnce(&[BigUint]) -> T) -> T {
    {
        let tables = TABLES.read().expect("stirling table lock poisoned");
        if let Some(row) = tables.get(&(kind, r)).and_then(|t| t.rows.get(n)) {
            return f(row);
        }
    }
    let mut tables = TABLES.write().expect("stirling table lock poisoned");
    let table = tables
        .entry((kind, r))
        .or_insert_with(|| TriangleTable::new(kind, r));
    f(table.row(n))
}

/// Row `n` of the shared table for `(kind, r)`, entries `m = 0..=n`.
pub fn r_stirling_row(kind: Kind, n: usize, r: usize) -> Vec<BigUint> {
    with_row(kind, r, n, <[BigUint]>::to_vec)
}

pub fn r_stirling(kind: Kind, n: usize, m: usize, r: usize) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    with_row(kind, r, n, |row| row[m].clone())
}

/// Same as [`r_stirling`] but accepts signed indices, reading zero for any
/// negative index. Convenient inside index-shifted sums.
pub fn r_stirling_i(kind: Kind, n: i64, m: i64, r: i64) -> Rational {
    if n < 0 || m < 0 || r < 0 {
        return Rational::zero();
    }
    Rational::from(r_stirling(kind, n as usize, m as usize, r as usize))
}

/// Unsigned Stirling number of the first kind `[n,m]`.
pub fn stirling1(n: usize, m: usize) -> BigUint {
    r_stirling(Kind::First, n, m, 0)
}

/// Stirling number of the second kind `{n,m}`.
pub fn stirling2(n: usize, m: usize) -> BigUint {
    r_stirling(Kind::Second, n, m, 0)
}

/// Coefficients of `z^r (z+r)(z+r+1)...(z+n-1)` (zero polynomial if `n < r`),
/// compared against row `n` of the first-kind table.
pub fn ogf_check_first(n: usize, r: usize) -> bool {
    let mut poly: Vec<BigUint> = if n < r {
        Vec::new()
    } else {
        let mut p = vec![BigUint::zero(); r + 1];
        p[r] = BigUint::one();
        p
    };
    if n >= r {
        for c in r..n {
            // multiply by (z + c)
            let mut next = vec![BigUint::zero(); poly.len() + 1];
            for (i, a) in poly.iter().enumerate() {
                next[i] += a * c;
                next[i + 1] += a;
            }
            poly = next;
        }
    }
    let row = r_stirling_row(Kind::First, n, r);
    (0..=n).all(|m| poly.get(m).cloned().unwrap_or_default() == row[m])
}

/// Expands `z^m / ((1 - r z)(1 - (r+1) z)...(1 - m z))` to `order` and
/// compares with `{k,m}_r` for `k = 0..=order`.
pub fn ogf_check_second(m: usize, r: usize, order: usize) -> bool {
    let series = if m < r {
        PowerSeries::zero(order)
    } else {
        let mut coeffs = vec![Rational::zero(); order + 1];
        if m <= order {
            coeffs[m] = Rational::one();
        }
        let mut s = PowerSeries::from_coeffs(order, coeffs);
        for j in r..=m {
            let geometric = PowerSeries::from_coeffs(
                order,
                (0..=order)
                    .map(|t| {
                        Rational::from(j as u64)
                            .pow(t as i64)
                            .expect("nonnegative power")
                    })
                    .collect(),
            );
            s = s.mul(&geometric);
        }
        s
    };
    (0..=order).all(|k| series.coeff(k) == Rational::from(r_stirling(Kind::Second, k, m, r)))
}

/// Orthogonality of the two r-Stirling triangles (plain and index-shifted)
/// together with seeded transform round trips, for `n, m <= n_max`.
pub fn orthogonality_check(n_max: usize, r: usize) -> Result<IdentityReport> {
    let r = r as i64;
    let mut pbox = ParamBox::desk();
    pbox.n_range = IntRange::new(0, n_max as i64)?;
    pbox.r_range = IntRange::new(r, r)?;
    Ok(identities::check(IdentityId::Orthogonality, &pbox))
}

/// `sum over r <= i_1 <= ... <= i_m <= n of i_1 * ... * i_m`, which equals
/// `{n+m, n}_r`. Brute-force enumeration meant as an oracle for small `m`.
/// Returns zero when `n < r`, matching the table.
pub fn broder_symmetric_sum(n: usize, m: usize, r: usize) -> BigUint {
    fn walk(lo: usize, hi: usize, left: usize, prod: &BigUint, acc: &mut BigUint) {
        if left == 0 {
            *acc += prod;
            return;
        }
        for i in lo..=hi {
            walk(i, hi, left - 1, &(prod * i), acc);
        }
    }
    if n < r {
        return BigUint::zero();
    }
    let mut acc = BigUint::zero();
    walk(r, n, m, &BigUint::one(), &mut acc);
    acc
}

/// Evaluates the r-Stirling decomposition of `[n,m]`:
///
/// * `m <= n-r+1`: `sum_{l=1}^{m} [r,l] [n, r-l+m]_r`
/// * otherwise: `sum_{l=1}^{n+1-max(m,r)} [r, m-n+r-1+l] [n, n-l+1]_r`
///
/// Both branches equal `stirling1(n, m)`.
pub fn lemma1_decompose(n: usize, m: usize, r: usize) -> Result<BigUint> {
    if !(1 <= r && r <= n && 1 <= m && m <= n) {
        return Err(invalid(format!(
            "decomposition needs 1 <= r <= n and 1 <= m <= n, got n={n}, m={m}, r={r}"
        )));
    }
    let (n, m, r) = (n as i64, m as i64, r as i64);
    let classical = |a: i64, b: i64| r_stirling_i(Kind::First, a, b, 0);
    let restricted = |a: i64, b: i64| r_stirling_i(Kind::First, a, b, r);
    let total: Rational = if m <= n - r + 1 {
        (1..=m)
            .map(|l| classical(r, l) * restricted(n, r - l + m))
            .sum()
    } else {
        (1..=n + 1 - m.max(r))
            .map(|l| classical(r, m - n + r - 1 + l) * restricted(n, n - l + 1))
            .sum()
    };
    let int: BigInt = total.to_integer().expect("integer sum");
    Ok(int.to_biguint().expect("nonnegative sum"))
}
