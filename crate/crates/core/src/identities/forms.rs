//! Per-identity forms: tuple enumeration (box intersected with hypotheses)
//! and the two sides of each display.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FormRole, ParamBox, Params};
use crate::error::{invalid, Result};
use crate::exactnum::{binomial, factorial, RatPolynomial, Rational};
use crate::sequences::{
    bell_omega, harmonic_bell_sides, poly_cauchy, poly_cauchy_poly, poly_cauchy_via_series,
    shifted_poly_cauchy, shifted_poly_cauchy_via_series, BellArgs,
};
use crate::stirling::{broder_symmetric_sum, lemma1_decompose, r_stirling_i, stirling1};
use crate::transforms::{
    binomial_transform, r_stirling_transform, shifted_r_stirling_transform, stirling_transform,
    RatSequence,
};
use crate::Kind;

use super::IdentityId;

type Sides = Result<(Rational, Rational)>;

pub(crate) struct Form {
    pub name: &'static str,
    pub role: FormRole,
    pub tuples: fn(&ParamBox) -> Vec<Params>,
    pub eval: fn(&Params) -> Sides,
}

const fn printed(
    name: &'static str,
    tuples: fn(&ParamBox) -> Vec<Params>,
    eval: fn(&Params) -> Sides,
) -> Form {
    Form {
        name,
        role: FormRole::Printed,
        tuples,
        eval,
    }
}

const fn corrected(
    name: &'static str,
    tuples: fn(&ParamBox) -> Vec<Params>,
    eval: fn(&Params) -> Sides,
) -> Form {
    Form {
        name,
        role: FormRole::Corrected,
        tuples,
        eval,
    }
}

pub(crate) fn forms(id: IdentityId) -> Vec<Form> {
    use IdentityId::*;
    match id {
        Th1 => vec![
            printed("theorem", nrk_n_ge_r, th1_theorem),
            printed("remark-closed-forms", nrk_n_ge_r_small::<4>, th1_remark),
            printed("n-equals-r", nrk_n_eq_r, th1_n_equals_r),
        ],
        Th2 => vec![
            printed("theorem", nrk_n_ge_r_minus_1, th2_theorem),
            printed("remark-k1-closed-forms", th2_remark_tuples, th2_remark),
            printed("n-equals-r-minus-1", nrk_n_eq_r_minus_1, th2_boundary),
        ],
        Th3SecondKind => vec![
            printed("theorem", nrk_n_ge_r, th3_theorem),
            printed("n-equals-r", nrk_n_eq_r, th3_n_equals_r),
        ],
        Th4SecondKind => vec![printed("theorem", nrk_n_ge_r_minus_1, th4_theorem)],
        Th5Poly => vec![
            printed("theorem-as-printed", nrkq, th5_printed),
            printed("q0-reduces-to-th1", nrkq_at::<0>, th5_q0),
            printed("q1-equals-th2-lhs", nrkq_at::<1>, th5_q1),
            printed("k1-cauchy-display", nrkq_k1, th5_k1),
            corrected("theorem-q-exponent-corrected", nrkq, th5_corrected),
        ],
        Th6PolySecond => vec![
            printed("theorem-as-printed", nrkq_nonzero, th6_printed),
            corrected("theorem-derived", nrkq, th6_corrected),
        ],
        Cor1Shifted => vec![
            printed("first-kind", nrk_n_ge_r, cor1_first),
            printed("second-kind-as-printed", nrk_n_ge_r, cor1_second_printed),
            corrected(
                "second-kind-parity-corrected",
                nrk_n_ge_r,
                cor1_second_corrected,
            ),
            printed("shifted-series-oracle", shifted_tuples, cor1_shifted_oracle),
            printed("alpha-one-specialization", kind_nk_tuples, cor1_alpha_one),
        ],
        Cor2Bell => vec![
            printed("display1", cor2_display1_tuples, cor2_display1),
            printed("display2-as-printed", cor2_nk_n_ge_r, cor2_display2_printed),
            printed("display3-as-printed", cor2_nk_n_ge_r, cor2_display3_printed),
            corrected(
                "display2-sign-corrected",
                cor2_nk_n_ge_r,
                cor2_display2_corrected,
            ),
            corrected(
                "display3-range-corrected",
                cor2_nk_n_ge_r,
                cor2_display3_corrected,
            ),
            printed("harmonic-bell", harmonic_bell_tuples, harmonic_bell),
        ],
        Th7AnnihilationFirst => vec![
            printed("theorem", annihilation_tuples::<1>, th7_theorem),
            printed(
                "remark-coefficients",
                th7_coefficient_tuples,
                th7_remark_coefficient,
            ),
            printed("broder-coefficients", th7_broder_tuples, th7_broder),
        ],
        Th8AnnihilationSecond => vec![
            printed("theorem-as-printed", annihilation_tuples::<0>, th8_printed),
            corrected("sum-to-k-plus-1", annihilation_tuples::<0>, th8_corrected),
            printed(
                "remark-coefficients",
                th8_coefficient_tuples,
                th8_remark_coefficient,
            ),
            printed("broder-coefficients", th8_broder_tuples, th8_broder),
        ],
        Lemma1 => vec![printed(
            "decomposition",
            lemma1_tuples,
            lemma1_decomposition,
        )],
        Eq303 => vec![
            printed("eq303", eq303_tuples, eq303),
            printed("a-recurrence", eq303_recurrence_tuples, eq303_recurrence),
            printed("a-base", eq303_base_tuples, eq303_base),
            printed("alternating-row", alternating_row_tuples, alternating_row),
        ],
        RemarkTables => vec![
            printed("table-entries", remark_entry_tuples, remark_entry),
            printed(
                "decompositions",
                remark_decomposition_tuples,
                remark_decomposition,
            ),
        ],
        Orthogonality => vec![
            printed("or-ri", ortho_tuples, ortho_ri),
            printed("or-r", ortho_tuples, ortho_r),
            printed("or-ri-shifted", ortho_tuples, ortho_ri_shifted),
            printed("or-r-shifted", ortho_tuples, ortho_r_shifted),
            printed(
                "binomial-roundtrip",
                roundtrip_tuples_classical,
                roundtrip_binomial,
            ),
            printed(
                "stirling-roundtrip",
                roundtrip_tuples_classical,
                roundtrip_stirling,
            ),
            printed("rstirling-roundtrip", roundtrip_tuples_r::<0>, roundtrip_r),
            printed(
                "shifted-rstirling-roundtrip",
                roundtrip_tuples_r::<1>,
                roundtrip_shifted,
            ),
        ],
    }
}

// ---------------------------------------------------------------------------
// shared kernels

fn s1(n: i64, m: i64, r: i64) -> Rational {
    r_stirling_i(Kind::First, n, m, r)
}

fn s2(n: i64, m: i64, r: i64) -> Rational {
    r_stirling_i(Kind::Second, n, m, r)
}

fn sign(e: i64) -> Rational {
    Rational::sign(e)
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

/// `1 / base^k`
fn inv_pow(base: i64, k: i64) -> Result<Rational> {
    Rational::inv_pow(&int(base), k)
}

fn pc(kind: Kind, j: i64, k: i64) -> Rational {
    poly_cauchy(kind, j as usize, k)
}

type PolyCache = HashMap<(Kind, usize, i64), RatPolynomial>;

static POLY_CACHE: LazyLock<RwLock<PolyCache>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// Poly-Cauchy polynomial evaluated at `q`, memoized per `(kind, j, k)`.
fn pcz(kind: Kind, j: i64, k: i64, q: &Rational) -> Rational {
    let key = (kind, j as usize, k);
    if let Some(p) = POLY_CACHE.read().expect("poly cache lock").get(&key) {
        return p.eval(q);
    }
    let p = poly_cauchy_poly(kind, j as usize, k);
    let v = p.eval(q);
    POLY_CACHE.write().expect("poly cache lock").insert(key, p);
    v
}

/// `sum_{j=r}^{n} {n,j}_r f(j)`
fn transform_sum(n: i64, r: i64, f: impl Fn(i64) -> Rational) -> Rational {
    (r..=n).map(|j| s2(n, j, r) * f(j)).sum()
}

/// `sum_{j=r-1}^{n} {n+1,j+1}_r f(j)`
fn shifted_transform_sum(n: i64, r: i64, f: impl Fn(i64) -> Rational) -> Rational {
    ((r - 1).max(0)..=n)
        .map(|j| s2(n + 1, j + 1, r) * f(j))
        .sum()
}

/// `sum_{l=lo}^{hi} weight(l) [r,l]`
fn over_first_row(
    r: i64,
    lo: i64,
    hi: i64,
    weight: impl Fn(i64) -> Result<Rational>,
) -> Result<Rational> {
    (lo..=hi).map(|l| Ok(s1(r, l, 0) * weight(l)?)).sum()
}

/// `sum_{i=0}^{big_n} C(big_n, i) term(i)`
fn binomial_sum(big_n: i64, term: impl Fn(i64) -> Result<Rational>) -> Result<Rational> {
    (0..=big_n).map(|i| Ok(binomial(big_n, i) * term(i)?)).sum()
}

fn nrk(p: &Params) -> Result<(i64, i64, i64)> {
    Ok((p.get_int("n")?, p.get_int("r")?, p.get_int("k")?))
}

// ---------------------------------------------------------------------------
// tuple enumeration

fn nrk_where(
    b: &ParamBox,
    r_min: i64,
    n_lo: impl Fn(i64) -> i64,
    n_hi: impl Fn(i64) -> i64,
) -> Vec<Params> {
    let mut out = Vec::new();
    for r in b.r_range.from(r_min) {
        for n in b.n_range.from(n_lo(r)) {
            if n > n_hi(r) {
                break;
            }
            for k in b.k_range.from(i64::MIN) {
                out.push(Params::new().int("n", n).int("r", r).int("k", k));
            }
        }
    }
    out
}

fn nrk_n_ge_r(b: &ParamBox) -> Vec<Params> {
    nrk_where(b, 1, |r| r, |_| i64::MAX)
}

fn nrk_n_ge_r_small<const R: i64>(b: &ParamBox) -> Vec<Params> {
    nrk_n_ge_r(b)
        .into_iter()
        .filter(|p| p.get_int("r").is_ok_and(|r| r <= R))
        .collect()
}

fn nrk_n_eq_r(b: &ParamBox) -> Vec<Params> {
    nrk_where(b, 1, |r| r, |r| r)
}

fn nrk_n_ge_r_minus_1(b: &ParamBox) -> Vec<Params> {
    nrk_where(b, 1, |r| r - 1, |_| i64::MAX)
}

fn nrk_n_eq_r_minus_1(b: &ParamBox) -> Vec<Params> {
    nrk_where(b, 1, |r| r - 1, |r| r - 1)
}

fn with_q(base: Vec<Params>, qs: &[Rational]) -> Vec<Params> {
    base.into_iter()
        .flat_map(|p| qs.iter().map(move |q| p.clone().rat("q", q.clone())))
        .collect()
}

fn nrkq(b: &ParamBox) -> Vec<Params> {
    with_q(nrk_n_ge_r(b), &b.q_values)
}

fn nrkq_nonzero(b: &ParamBox) -> Vec<Params> {
    let qs: Vec<Rational> = b
        .q_values
        .iter()
        .filter(|q| !q.is_zero())
        .cloned()
        .collect();
    with_q(nrk_n_ge_r(b), &qs)
}

fn nrkq_at<const Q: i64>(b: &ParamBox) -> Vec<Params> {
    let q = int(Q);
    let qs: Vec<Rational> = b.q_values.iter().filter(|v| **v == q).cloned().collect();
    with_q(nrk_n_ge_r(b), &qs)
}

fn nrkq_k1(b: &ParamBox) -> Vec<Params> {
    nrkq(b)
        .into_iter()
        .filter(|p| p.get_int("k") == Ok(1))
        .collect()
}

// ---------------------------------------------------------------------------
// r-Stirling transforms of the poly-Cauchy numbers

fn th1_lhs(n: i64, r: i64, k: i64) -> Rational {
    transform_sum(n, r, |j| pc(Kind::First, j, k))
}

fn th1_rhs(n: i64, r: i64, k: i64) -> Result<Rational> {
    over_first_row(r, 1, r, |l| Ok(sign(r - l) * inv_pow(n - r + l + 1, k)?))
}

fn th1_theorem(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    Ok((th1_lhs(n, r, k), th1_rhs(n, r, k)?))
}

fn th1_remark(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let t = |c: i64, base: i64| -> Result<Rational> { Ok(int(c) * inv_pow(base, k)?) };
    let rhs = match r {
        1 => t(1, n + 1)?,
        2 => t(-1, n)? + t(1, n + 1)?,
        3 => t(2, n - 1)? - t(3, n)? + t(1, n + 1)?,
        4 => t(-6, n - 2)? + t(11, n - 1)? - t(6, n)? + t(1, n + 1)?,
        _ => return Err(invalid(format!("no closed form for r={r}"))),
    };
    Ok((th1_lhs(n, r, k), rhs))
}

fn th1_n_equals_r(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    Ok((
        th1_lhs(n, r, k),
        poly_cauchy_via_series(Kind::First, r as usize, k, &Rational::zero()),
    ))
}

fn th2_lhs(n: i64, r: i64, k: i64) -> Rational {
    shifted_transform_sum(n, r, |j| pc(Kind::First, j, k))
}

fn th2_theorem(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let rhs = over_first_row(r, 1, r, |l| {
        Ok(sign(r - l) * binomial_sum(n - r + l, |i| inv_pow(i + 1, k))?)
    })?;
    Ok((th2_lhs(n, r, k), rhs))
}

fn th2_remark_tuples(b: &ParamBox) -> Vec<Params> {
    nrk_n_ge_r_minus_1(b)
        .into_iter()
        .filter(|p| p.get_int("k") == Ok(1) && p.get_int("r").is_ok_and(|r| r <= 3))
        .collect()
}

fn th2_remark(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    // (2^m - 1) / m
    let g = |m: i64| -> Result<Rational> { (int(2).pow(m)? - int(1)).checked_div(&int(m)) };
    let rhs = match r {
        1 => g(n + 1)?,
        2 => -g(n)? + g(n + 1)?,
        3 => int(2) * g(n - 1)? - int(3) * g(n)? + g(n + 1)?,
        _ => return Err(invalid(format!("no closed form for r={r}"))),
    };
    Ok((th2_lhs(n, r, k), rhs))
}

fn th2_boundary(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let rhs = (0..=r - 1)
        .map(|i| Ok(sign(r - i - 1) * s1(r - 1, i, 0) * inv_pow(i + 1, k)?))
        .sum::<Result<_>>()?;
    Ok((th2_lhs(n, r, k), rhs))
}

fn th3_lhs(n: i64, r: i64, k: i64) -> Rational {
    transform_sum(n, r, |j| pc(Kind::Second, j, k))
}

fn th3_theorem(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let rhs = over_first_row(r, 1, r, |l| Ok(sign(n) * inv_pow(n - r + l + 1, k)?))?;
    Ok((th3_lhs(n, r, k), rhs))
}

fn th3_n_equals_r(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    Ok((
        th3_lhs(n, r, k),
        poly_cauchy_via_series(Kind::Second, r as usize, k, &Rational::zero()),
    ))
}

fn th4_lhs(n: i64, r: i64, k: i64) -> Rational {
    shifted_transform_sum(n, r, |j| pc(Kind::Second, j, k))
}

fn th4_theorem(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let rhs = over_first_row(r, 1, r, |l| {
        Ok(sign(r - l) * binomial_sum(n - r + l, |i| Ok(sign(i) * inv_pow(i + 1, k)?))?)
    })?;
    Ok((th4_lhs(n, r, k), rhs))
}

// ---------------------------------------------------------------------------
// poly-Cauchy polynomials

fn nrkq_of(p: &Params) -> Result<(i64, i64, i64, Rational)> {
    let (n, r, k) = nrk(p)?;
    Ok((n, r, k, p.get_rat("q")?))
}

fn th5_lhs(n: i64, r: i64, k: i64, q: &Rational) -> Rational {
    transform_sum(n, r, |j| pcz(Kind::First, j, k, q))
}

fn th6_lhs(n: i64, r: i64, k: i64, q: &Rational) -> Rational {
    transform_sum(n, r, |j| pcz(Kind::Second, j, k, q))
}

/// `sum_i C(N,i) q^(e(i)) / (i+1)^k` with `N = n - r + l`.
fn q_binomial_sum(
    big_n: i64,
    k: i64,
    q: &Rational,
    exponent: impl Fn(i64) -> i64,
) -> Result<Rational> {
    binomial_sum(big_n, |i| Ok(q.pow(exponent(i))? * inv_pow(i + 1, k)?))
}

fn th5_printed(p: &Params) -> Sides {
    let (n, r, k, q) = nrkq_of(p)?;
    let rhs = over_first_row(r, 1, r, |l| {
        Ok(sign(r - l) * q_binomial_sum(n - r + l, k, &q, |i| n - i)?)
    })?;
    Ok((th5_lhs(n, r, k, &q), rhs))
}

fn th5_corrected(p: &Params) -> Sides {
    let (n, r, k, q) = nrkq_of(p)?;
    let rhs = over_first_row(r, 1, r, |l| {
        let big_n = n - r + l;
        Ok(sign(r - l) * q_binomial_sum(big_n, k, &q, |i| big_n - i)?)
    })?;
    Ok((th5_lhs(n, r, k, &q), rhs))
}

fn th5_q0(p: &Params) -> Sides {
    let (n, r, k, q) = nrkq_of(p)?;
    Ok((th5_lhs(n, r, k, &q), th1_rhs(n, r, k)?))
}

fn th5_q1(p: &Params) -> Sides {
    let (n, r, k, q) = nrkq_of(p)?;
    Ok((th5_lhs(n, r, k, &q), th2_lhs(n, r, k)))
}

fn th5_k1(p: &Params) -> Sides {
    let (n, r, k, q) = nrkq_of(p)?;
    let q1 = &q + &Rational::one();
    let rhs = over_first_row(r, 1, r, |l| {
        let e = n - r + l + 1;
        Ok(sign(r - l) * (q1.pow(e)? - q.pow(e)?) / int(e))
    })?;
    Ok((th5_lhs(n, r, k, &q), rhs))
}

fn th6_printed(p: &Params) -> Sides {
    let (n, r, k, q) = nrkq_of(p)?;
    let neg_q = -&q;
    let rhs = over_first_row(r, 0, r - 1, |l| {
        let outer = neg_q.pow(n - r - l)?;
        Ok(sign(r - l) * outer * q_binomial_sum(n - r + l, k, &q, |i| -i)?)
    })?;
    Ok((th6_lhs(n, r, k, &q), rhs))
}

fn th6_corrected(p: &Params) -> Sides {
    let (n, r, k, q) = nrkq_of(p)?;
    let rhs = over_first_row(r, 1, r, |l| {
        let big_n = n - r + l;
        Ok(sign(n) * q_binomial_sum(big_n, k, &q, |i| big_n - i)?)
    })?;
    Ok((th6_lhs(n, r, k, &q), rhs))
}

// ---------------------------------------------------------------------------
// shifted numbers

fn shifted(kind: Kind, n: i64, k: i64, alpha: i64) -> Result<Rational> {
    shifted_poly_cauchy(kind, n as usize, k, &int(alpha))
}

fn cor1_first(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    Ok((th1_lhs(n, r, k), shifted(Kind::First, r, k, n - r + 1)?))
}

fn cor1_second_printed(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    Ok((th3_lhs(n, r, k), shifted(Kind::Second, r, k, n - r + 1)?))
}

fn cor1_second_corrected(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    Ok((
        th3_lhs(n, r, k),
        sign(n - r) * shifted(Kind::Second, r, k, n - r + 1)?,
    ))
}

fn kind_of(p: &Params) -> Result<Kind> {
    match p.get_int("kind")? {
        1 => Ok(Kind::First),
        2 => Ok(Kind::Second),
        other => Err(invalid(format!("kind must be 1 or 2, got {other}"))),
    }
}

fn kind_nk_tuples(b: &ParamBox) -> Vec<Params> {
    let mut out = Vec::new();
    for kind in [1, 2] {
        for n in b.n_range.from(0) {
            for k in b.k_range.from(i64::MIN) {
                out.push(Params::new().int("kind", kind).int("n", n).int("k", k));
            }
        }
    }
    out
}

fn shifted_tuples(b: &ParamBox) -> Vec<Params> {
    kind_nk_tuples(b)
        .into_iter()
        .flat_map(|p| {
            b.alpha_values
                .iter()
                .map(move |a| p.clone().rat("alpha", a.clone()))
        })
        .collect()
}

fn cor1_shifted_oracle(p: &Params) -> Sides {
    let (kind, n, k, alpha) = (
        kind_of(p)?,
        p.get_int("n")? as usize,
        p.get_int("k")?,
        p.get_rat("alpha")?,
    );
    Ok((
        shifted_poly_cauchy(kind, n, k, &alpha)?,
        shifted_poly_cauchy_via_series(kind, n, k, &alpha)?,
    ))
}

fn cor1_alpha_one(p: &Params) -> Sides {
    let (kind, n, k) = (kind_of(p)?, p.get_int("n")?, p.get_int("k")?);
    Ok((shifted(kind, n, k, 1)?, pc(kind, n, k)))
}

// ---------------------------------------------------------------------------
// harmonic numbers and Bell polynomials

fn cor2_display1_tuples(b: &ParamBox) -> Vec<Params> {
    nrk_n_ge_r_minus_1(b)
        .into_iter()
        .filter(|p| p.get_int("k").is_ok_and(|k| k >= 1))
        .collect()
}

fn cor2_nk_n_ge_r(b: &ParamBox) -> Vec<Params> {
    nrk_n_ge_r(b)
        .into_iter()
        .filter(|p| p.get_int("k").is_ok_and(|k| k >= 1))
        .collect()
}

/// `Omega_{k-1}(H_{N+1}, ..., H_{N+1}^(k-1)) / ((N+1) (k-1)!)`
fn omega_term(big_n: i64, k: i64) -> Result<Rational> {
    let i = (k - 1) as usize;
    let args = BellArgs::harmonic_differences((big_n + 1) as usize, 0, i);
    let denom = int(big_n + 1) * Rational::from(factorial(i as u64));
    bell_omega(&args, i)?.checked_div(&denom)
}

fn cor2_display1(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let rhs = over_first_row(r, 1, r, |l| Ok(sign(r - l) * omega_term(n - r + l, k)?))?;
    Ok((th4_lhs(n, r, k), rhs))
}

fn cor2_display2_printed(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let rhs = over_first_row(r, 1, r, |l| Ok(sign(n - r + l) * omega_term(n - r + l, k)?))?;
    Ok((th5_lhs(n, r, k, &int(-1)), rhs))
}

fn cor2_display2_corrected(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let rhs = over_first_row(r, 1, r, |l| Ok(sign(n) * omega_term(n - r + l, k)?))?;
    Ok((th5_lhs(n, r, k, &int(-1)), rhs))
}

fn cor2_display3_printed(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let rhs = over_first_row(r, 0, r - 1, |l| Ok(sign(r - l) * omega_term(n - r + l, k)?))?;
    Ok((th6_lhs(n, r, k, &int(-1)), rhs))
}

fn cor2_display3_corrected(p: &Params) -> Sides {
    let (n, r, k) = nrk(p)?;
    let rhs = over_first_row(r, 1, r, |l| Ok(sign(r - l) * omega_term(n - r + l, k)?))?;
    Ok((th6_lhs(n, r, k, &int(-1)), rhs))
}

/// `m >= 1`, `m + n <= n_max`, `0 <= i <= k_max`.
fn harmonic_bell_tuples(b: &ParamBox) -> Vec<Params> {
    let mut out = Vec::new();
    for m in 1..=b.n_range.hi {
        for n in 0..=b.n_range.hi - m {
            for i in 0..=b.k_range.hi {
                out.push(Params::new().int("m", m).int("n", n).int("i", i));
            }
        }
    }
    out
}

fn harmonic_bell(p: &Params) -> Sides {
    let (m, n, i) = (p.get_int("m")?, p.get_int("n")?, p.get_int("i")?);
    Ok(harmonic_bell_sides(m as usize, n as usize, i as usize))
}

// ---------------------------------------------------------------------------
// annihilation sums

/// `k >= K_MIN`, `n >= k + 2`.
fn annihilation_tuples<const K_MIN: i64>(b: &ParamBox) -> Vec<Params> {
    let mut out = Vec::new();
    for k in b.k_range.from(K_MIN) {
        for n in b.n_range.from(k + 2) {
            out.push(Params::new().int("n", n).int("k", k));
        }
    }
    out
}

fn nk(p: &Params) -> Result<(i64, i64)> {
    Ok((p.get_int("n")?, p.get_int("k")?))
}

fn th7_coefficient(n: i64, k: i64, l: i64) -> Rational {
    s2(n - 1, n - l - 1, n - k - 1)
}

fn th8_coefficient(n: i64, k: i64, l: i64) -> Rational {
    s2(n + 1, n - l + 1, n - k)
}

fn th7_theorem(p: &Params) -> Sides {
    let (n, k) = nk(p)?;
    let lhs = (0..=k)
        .map(|l| th7_coefficient(n, k, l) * pc(Kind::First, n - l, -k))
        .sum();
    Ok((lhs, Rational::zero()))
}

fn th8_sum(n: i64, k: i64, l_max: i64) -> Rational {
    (0..=l_max)
        .map(|l| th8_coefficient(n, k, l) * pc(Kind::Second, n - l, -k))
        .sum()
}

fn th8_printed(p: &Params) -> Sides {
    let (n, k) = nk(p)?;
    Ok((th8_sum(n, k, k), Rational::zero()))
}

fn th8_corrected(p: &Params) -> Sides {
    let (n, k) = nk(p)?;
    Ok((th8_sum(n, k, k + 1), Rational::zero()))
}

fn coefficient_tuples<const K_MIN: i64>(b: &ParamBox, k_max: i64, extra_terms: i64) -> Vec<Params> {
    annihilation_tuples::<K_MIN>(b)
        .into_iter()
        .filter(|p| p.get_int("k").is_ok_and(|k| k <= k_max))
        .flat_map(|p| {
            let k = p.get_int("k").expect("k present");
            (0..=k + extra_terms).map(move |l| p.clone().int("l", l))
        })
        .collect()
}

fn th7_coefficient_tuples(b: &ParamBox) -> Vec<Params> {
    coefficient_tuples::<1>(b, 3, 0)
}

fn th8_coefficient_tuples(b: &ParamBox) -> Vec<Params> {
    coefficient_tuples::<0>(b, 2, 1)
}

fn th7_broder_tuples(b: &ParamBox) -> Vec<Params> {
    coefficient_tuples::<1>(b, i64::MAX, 0)
}

fn th8_broder_tuples(b: &ParamBox) -> Vec<Params> {
    coefficient_tuples::<0>(b, i64::MAX, 1)
}

fn nkl(p: &Params) -> Result<(i64, i64, i64)> {
    Ok((p.get_int("n")?, p.get_int("k")?, p.get_int("l")?))
}

/// Expanded coefficient polynomials in `n`, indexed `[k][l]`.
fn th7_remark_polynomial(n: i64, k: i64, l: i64) -> Option<i64> {
    Some(match (k, l) {
        (_, 0) => 1,
        (1, 1) => n - 2,
        (2, 1) => 2 * n - 5,
        (2, 2) => (n - 3) * (n - 3),
        (3, 1) => 3 * n - 9,
        (3, 2) => 3 * n * n - 21 * n + 37,
        (3, 3) => (n - 4).pow(3),
        _ => return None,
    })
}

fn th8_remark_polynomial(n: i64, k: i64, l: i64) -> Option<i64> {
    Some(match (k, l) {
        (_, 0) => 1,
        (0, 1) => n,
        (1, 1) => 2 * n - 1,
        (1, 2) => (n - 1) * (n - 1),
        (2, 1) => 3 * n - 3,
        (2, 2) => 3 * n * n - 9 * n + 7,
        (2, 3) => (n - 2).pow(3),
        _ => return None,
    })
}

fn th7_remark_coefficient(p: &Params) -> Sides {
    let (n, k, l) = nkl(p)?;
    let poly = th7_remark_polynomial(n, k, l)
        .ok_or_else(|| invalid(format!("no printed coefficient for k={k} l={l}")))?;
    Ok((th7_coefficient(n, k, l), int(poly)))
}

fn th8_remark_coefficient(p: &Params) -> Sides {
    let (n, k, l) = nkl(p)?;
    let poly = th8_remark_polynomial(n, k, l)
        .ok_or_else(|| invalid(format!("no printed coefficient for k={k} l={l}")))?;
    Ok((th8_coefficient(n, k, l), int(poly)))
}

fn th7_broder(p: &Params) -> Sides {
    let (n, k, l) = nkl(p)?;
    let sum = broder_symmetric_sum((n - l - 1) as usize, l as usize, (n - k - 1) as usize);
    Ok((th7_coefficient(n, k, l), Rational::from(sum)))
}

fn th8_broder(p: &Params) -> Sides {
    let (n, k, l) = nkl(p)?;
    let sum = broder_symmetric_sum((n - l + 1) as usize, l as usize, (n - k) as usize);
    Ok((th8_coefficient(n, k, l), Rational::from(sum)))
}

// ---------------------------------------------------------------------------
// decomposition over r and the a_{n,i} expansion

fn lemma1_tuples(b: &ParamBox) -> Vec<Params> {
    let mut out = Vec::new();
    for n in b.n_range.from(1) {
        for r in b.r_range.from(1) {
            if r > n {
                break;
            }
            for m in 1..=n {
                out.push(Params::new().int("n", n).int("m", m).int("r", r));
            }
        }
    }
    out
}

fn lemma1_decomposition(p: &Params) -> Sides {
    let (n, m, r) = (p.get_int("n")?, p.get_int("m")?, p.get_int("r")?);
    let lhs = lemma1_decompose(n as usize, m as usize, r as usize)?;
    Ok((
        Rational::from(lhs),
        Rational::from(stirling1(n as usize, m as usize)),
    ))
}

/// `a_{n,i} = sum_l [r,l] sum_{j=1}^{n-r+2} (-1)^(l+j-i) C(l+j-2, i) [n+1, r+j-1]_r`
fn a_coefficient(n: i64, i: i64, r: i64) -> Rational {
    (1..=r)
        .map(|l| {
            let inner: Rational = (1..=n - r + 2)
                .map(|j| sign(l + j - i) * binomial(l + j - 2, i) * s1(n + 1, r + j - 1, r))
                .sum();
            s1(r, l, 0) * inner
        })
        .sum()
}

fn eq303_tuples(b: &ParamBox) -> Vec<Params> {
    let mut out = Vec::new();
    for n in b.n_range.from(1) {
        for r in b.r_range.from(1) {
            if r > n {
                break;
            }
            for i in 0..=n {
                out.push(Params::new().int("n", n).int("i", i).int("r", r));
            }
        }
    }
    out
}

fn eq303_recurrence_tuples(b: &ParamBox) -> Vec<Params> {
    eq303_tuples(b)
        .into_iter()
        .filter(|p| p.get_int("n").is_ok_and(|n| n >= 2) && p.get_int("i").is_ok_and(|i| i >= 1))
        .collect()
}

fn eq303_base_tuples(b: &ParamBox) -> Vec<Params> {
    eq303_tuples(b)
        .into_iter()
        .filter(|p| p.get_int("i") == Ok(0))
        .collect()
}

fn nir(p: &Params) -> Result<(i64, i64, i64)> {
    Ok((p.get_int("n")?, p.get_int("i")?, p.get_int("r")?))
}

fn eq303(p: &Params) -> Sides {
    let (n, i, r) = nir(p)?;
    Ok((a_coefficient(n, i, r), s1(n, i, 0)))
}

fn eq303_recurrence(p: &Params) -> Sides {
    let (n, i, r) = nir(p)?;
    let rhs = int(n - 1) * a_coefficient(n - 1, i, r) + a_coefficient(n - 1, i - 1, r);
    Ok((a_coefficient(n, i, r), rhs))
}

fn eq303_base(p: &Params) -> Sides {
    let (n, i, r) = nir(p)?;
    Ok((a_coefficient(n, i, r), Rational::zero()))
}

fn alternating_row_tuples(b: &ParamBox) -> Vec<Params> {
    b.r_range
        .from(2)
        .map(|r| Params::new().int("r", r))
        .collect()
}

fn alternating_row(p: &Params) -> Sides {
    let r = p.get_int("r")?;
    Ok((over_first_row(r, 1, r, |l| Ok(sign(l)))?, Rational::zero()))
}

// ---------------------------------------------------------------------------
// Printed table values

/// `(kind, n, m, r, value)` as printed in the decomposition remark, plus the
/// row `[4, 1..3] = 6, 11, 6` and `{5,4}_4 = 4`.
const REMARK_ENTRIES: &[(i64, i64, i64, i64, i64)] = &[
    (1, 6, 3, 0, 225),
    (1, 6, 4, 2, 71),
    (1, 6, 3, 2, 154),
    (1, 6, 5, 3, 12),
    (1, 6, 4, 3, 47),
    (1, 6, 3, 3, 60),
    (1, 6, 6, 4, 1),
    (1, 6, 5, 4, 9),
    (1, 6, 4, 4, 20),
    (1, 2, 1, 0, 1),
    (1, 2, 2, 0, 1),
    (1, 3, 1, 0, 2),
    (1, 3, 2, 0, 3),
    (1, 3, 3, 0, 1),
    (1, 4, 1, 0, 6),
    (1, 4, 2, 0, 11),
    (1, 4, 3, 0, 6),
    (2, 5, 4, 4, 4),
];

/// Printed products `[r,l] * [6, .]_r` of the three decompositions of `[6,3]`.
const REMARK_DECOMPOSITIONS: &[(i64, &[(i64, i64)])] = &[
    (2, &[(1, 71), (1, 154)]),
    (3, &[(2, 12), (3, 47), (1, 60)]),
    (4, &[(6, 1), (11, 9), (6, 20)]),
];

fn remark_entry_tuples(_: &ParamBox) -> Vec<Params> {
    REMARK_ENTRIES
        .iter()
        .map(|&(kind, n, m, r, _)| {
            Params::new()
                .int("kind", kind)
                .int("n", n)
                .int("m", m)
                .int("r", r)
        })
        .collect()
}

fn remark_entry(p: &Params) -> Sides {
    let key = (
        p.get_int("kind")?,
        p.get_int("n")?,
        p.get_int("m")?,
        p.get_int("r")?,
    );
    let &(.., printed) = REMARK_ENTRIES
        .iter()
        .find(|e| (e.0, e.1, e.2, e.3) == key)
        .ok_or_else(|| invalid(format!("no printed table entry for {p}")))?;
    let kind = kind_of(p)?;
    Ok((int(printed), r_stirling_i(kind, key.1, key.2, key.3)))
}

fn remark_decomposition_tuples(_: &ParamBox) -> Vec<Params> {
    REMARK_DECOMPOSITIONS
        .iter()
        .map(|(r, _)| Params::new().int("n", 6).int("m", 3).int("r", *r))
        .collect()
}

fn remark_decomposition(p: &Params) -> Sides {
    let (n, m, r) = (p.get_int("n")?, p.get_int("m")?, p.get_int("r")?);
    let (_, products) = REMARK_DECOMPOSITIONS
        .iter()
        .find(|(rr, _)| *rr == r && (n, m) == (6, 3))
        .ok_or_else(|| invalid(format!("no printed decomposition for {p}")))?;
    let printed: i64 = products.iter().map(|(a, b)| a * b).sum();
    Ok((
        int(printed),
        Rational::from(lemma1_decompose(n as usize, m as usize, r as usize)?),
    ))
}

// ---------------------------------------------------------------------------
// Orthogonality and transform round trips

fn ortho_tuples(b: &ParamBox) -> Vec<Params> {
    let mut out = Vec::new();
    for r in b.r_range.from(0) {
        for n in b.n_range.from(0) {
            for m in b.n_range.from(0) {
                out.push(Params::new().int("n", n).int("m", m).int("r", r));
            }
        }
    }
    out
}

fn nmr(p: &Params) -> Result<(i64, i64, i64)> {
    Ok((p.get_int("n")?, p.get_int("m")?, p.get_int("r")?))
}

fn delta(cond: bool) -> Rational {
    if cond {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn ortho_ri(p: &Params) -> Sides {
    let (n, m, r) = nmr(p)?;
    let lhs = (0..=n.max(m))
        .map(|k| sign(n - k) * s1(n, k, r) * s2(k, m, r))
        .sum();
    Ok((lhs, delta(n >= r && m == n)))
}

fn ortho_r(p: &Params) -> Sides {
    let (n, m, r) = nmr(p)?;
    let lhs = (0..=n.max(m))
        .map(|k| sign(n - k) * s1(k, n, r) * s2(m, k, r))
        .sum();
    Ok((lhs, delta(n >= r && m == n)))
}

fn ortho_ri_shifted(p: &Params) -> Sides {
    let (n, m, r) = nmr(p)?;
    let lhs = (0..=n.max(m))
        .map(|k| sign(n - k) * s1(n + 1, k + 1, r) * s2(k + 1, m + 1, r))
        .sum();
    Ok((lhs, delta(n >= r - 1 && m == n)))
}

fn ortho_r_shifted(p: &Params) -> Sides {
    let (n, m, r) = nmr(p)?;
    let lhs = (0..=n.max(m))
        .map(|k| sign(n - k) * s1(k + 1, n + 1, r) * s2(m + 1, k + 1, r))
        .sum();
    Ok((lhs, delta(n >= r - 1 && m == n)))
}

/// Deterministic random rational sequence for a seed.
pub(crate) fn random_sequence(seed: u64, len: usize) -> RatSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = (0..len)
        .map(|_| {
            let num: i64 = rng.gen_range(-50..=50);
            let den: i64 = rng.gen_range(1..=20);
            Rational::new(num, den).expect("nonzero denominator")
        })
        .collect();
    RatSequence::new(terms)
}

fn roundtrip_tuples_classical(b: &ParamBox) -> Vec<Params> {
    let mut out = Vec::new();
    for seed in b.seed..b.seed + b.trials {
        for n in 0..b.seq_len as i64 {
            out.push(
                Params::new()
                    .int("seed", seed as i64)
                    .int("len", b.seq_len as i64)
                    .int("n", n),
            );
        }
    }
    out
}

/// Indices `n >= r - SHIFT` only, where the round trip is exact.
fn roundtrip_tuples_r<const SHIFT: i64>(b: &ParamBox) -> Vec<Params> {
    let mut out = Vec::new();
    for r in b.r_range.from(0) {
        for seed in b.seed..b.seed + b.trials {
            for n in (r - SHIFT).max(0)..b.seq_len as i64 {
                out.push(
                    Params::new()
                        .int("seed", seed as i64)
                        .int("len", b.seq_len as i64)
                        .int("r", r)
                        .int("n", n),
                );
            }
        }
    }
    out
}

fn roundtrip_with(p: &Params, f: impl Fn(&RatSequence, bool) -> Result<RatSequence>) -> Sides {
    let (seed, len, n) = (
        p.get_int("seed")?,
        p.get_int("len")?,
        p.get_int("n")? as usize,
    );
    let a = random_sequence(seed as u64, len as usize);
    let back = f(&f(&a, false)?, true)?;
    let missing = || invalid(format!("index {n} not recovered"));
    Ok((
        back.get(n).cloned().ok_or_else(missing)?,
        a.get(n).cloned().ok_or_else(missing)?,
    ))
}

fn roundtrip_binomial(p: &Params) -> Sides {
    roundtrip_with(p, binomial_transform)
}

fn roundtrip_stirling(p: &Params) -> Sides {
    roundtrip_with(p, stirling_transform)
}

fn roundtrip_r(p: &Params) -> Sides {
    let r = p.get_int("r")? as usize;
    roundtrip_with(p, |a, inv| r_stirling_transform(a, r, inv))
}

fn roundtrip_shifted(p: &Params) -> Sides {
    let r = p.get_int("r")? as usize;
    roundtrip_with(p, |a, inv| shifted_r_stirling_transform(a, r, inv))
}
