//! Named checkers for the transform identities, decompositions and
//! annihilation formulas.
//!
//! Every identity is a list of *forms*. A form enumerates parameter tuples
//! from a [`ParamBox`] (already intersected with its hypotheses) and
//! evaluates two independently computed exact sides per tuple. There is no
//! tolerance: a tuple passes iff both sides are equal rationals.
//!
//! Some displays do not hold as printed. Those identities carry
//! [`FormRole::Printed`] forms that are expected to fail together with
//! [`FormRole::Corrected`] variants, and report
//! [`Status::PassWithKnownDiscrepancy`] when only printed forms fail.

mod forms;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::exactnum::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Th1,
    Th2,
    Th3SecondKind,
    Th4SecondKind,
    Th5Poly,
    Th6PolySecond,
    Cor1Shifted,
    Cor2Bell,
    Th7AnnihilationFirst,
    Th8AnnihilationSecond,
    Lemma1,
    Eq303,
    RemarkTables,
    Orthogonality,
}

const NAMES: &[(IdentityId, &str, &[&str])] = &[
    (IdentityId::Th1, "TH1", &[]),
    (IdentityId::Th2, "TH2", &[]),
    (IdentityId::Th3SecondKind, "TH3_SECOND_KIND", &["TH3"]),
    (IdentityId::Th4SecondKind, "TH4_SECOND_KIND", &["TH4"]),
    (IdentityId::Th5Poly, "TH5_POLY", &["TH5"]),
    (IdentityId::Th6PolySecond, "TH6_POLY_SECOND", &["TH6"]),
    (IdentityId::Cor1Shifted, "COR1_SHIFTED", &["COR1"]),
    (IdentityId::Cor2Bell, "COR2_BELL", &["COR2"]),
    (
        IdentityId::Th7AnnihilationFirst,
        "TH7_ANNIHILATION_FIRST",
        &["TH7"],
    ),
    (
        IdentityId::Th8AnnihilationSecond,
        "TH8_ANNIHILATION_SECOND",
        &["TH8"],
    ),
    (IdentityId::Lemma1, "LEMMA1", &[]),
    (IdentityId::Eq303, "EQ303", &[]),
    (IdentityId::RemarkTables, "REMARK_TABLES", &[]),
    (IdentityId::Orthogonality, "ORTHOGONALITY", &["ORTHO"]),
];

impl IdentityId {
    pub const ALL: [IdentityId; 14] = [
        IdentityId::Th1,
        IdentityId::Th2,
        IdentityId::Th3SecondKind,
        IdentityId::Th4SecondKind,
        IdentityId::Th5Poly,
        IdentityId::Th6PolySecond,
        IdentityId::Cor1Shifted,
        IdentityId::Cor2Bell,
        IdentityId::Th7AnnihilationFirst,
        IdentityId::Th8AnnihilationSecond,
        IdentityId::Lemma1,
        IdentityId::Eq303,
        IdentityId::RemarkTables,
        IdentityId::Orthogonality,
    ];

    pub fn name(self) -> &'static str {
        NAMES
            .iter()
            .find(|(id, ..)| *id == self)
            .map(|(_, n, _)| *n)
            .expect("every id is named")
    }

    /// Identities whose printed display is known not to hold verbatim; each
    /// ships with a corrected variant.
    pub fn has_known_discrepancy(self) -> bool {
        matches!(
            self,
            IdentityId::Th5Poly
                | IdentityId::Th6PolySecond
                | IdentityId::Cor1Shifted
                | IdentityId::Cor2Bell
                | IdentityId::Th8AnnihilationSecond
        )
    }

    pub fn valid_names() -> Vec<&'static str> {
        NAMES.iter().map(|(_, n, _)| *n).collect()
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        NAMES
            .iter()
            .find(|(_, name, aliases)| *name == upper || aliases.contains(&upper.as_str()))
            .map(|(id, ..)| *id)
            .ok_or_else(|| {
                invalid(format!(
                    "unknown identity {s:?}; valid ids: {}",
                    IdentityId::valid_names().join(", ")
                ))
            })
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Closed integer interval `lo..=hi`, never empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(invalid(format!("empty range {lo}..={hi}")));
        }
        Ok(IntRange { lo, hi })
    }

    /// Values of the range that are also `>= min` (possibly none).
    pub fn from(&self, min: i64) -> std::ops::RangeInclusive<i64> {
        self.lo.max(min)..=self.hi
    }

    pub fn contains(&self, v: i64) -> bool {
        (self.lo..=self.hi).contains(&v)
    }
}

/// Parameter box over which identities are checked. Each checker
/// intersects it with the hypotheses of its identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamBox {
    pub n_range: IntRange,
    pub r_range: IntRange,
    pub k_range: IntRange,
    pub q_values: Vec<Rational>,
    pub alpha_values: Vec<Rational>,
    /// First seed of the randomized round trips.
    pub seed: u64,
    /// Number of seeds used by the randomized round trips.
    pub trials: u64,
    /// Length of the random sequences used by the round trips.
    pub seq_len: usize,
}

impl ParamBox {
    /// `n <= 12`, `r <= 4`, `-4 <= k <= 4`, `q in {-1, 0, 1/2, 1, 2}`,
    /// `alpha in {1/2, 1, 3/2}`.
    pub fn desk() -> Self {
        let q = |s: &str| s.parse::<Rational>().expect("literal");
        ParamBox {
            n_range: IntRange { lo: 0, hi: 12 },
            r_range: IntRange { lo: 0, hi: 4 },
            k_range: IntRange { lo: -4, hi: 4 },
            q_values: ["-1", "0", "1/2", "1", "2"].iter().map(|s| q(s)).collect(),
            alpha_values: ["1/2", "1", "3/2"].iter().map(|s| q(s)).collect(),
            seed: 0,
            trials: 20,
            seq_len: 12,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("n", self.n_range),
            ("r", self.r_range),
            ("k", self.k_range),
        ] {
            if r.lo > r.hi {
                return Err(invalid(format!(
                    "{name} range {}..={} is empty",
                    r.lo, r.hi
                )));
            }
        }
        if let Some(a) = self.alpha_values.iter().find(|a| !a.is_positive()) {
            return Err(invalid(format!("alpha values must be positive, got {a}")));
        }
        Ok(())
    }
}

impl Default for ParamBox {
    fn default() -> Self {
        ParamBox::desk()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Rat(Rational),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Rat(v) => write!(f, "{v}"),
        }
    }
}

/// Named parameter tuple of one check, e.g. `{n: 5, r: 2, k: 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, ParamValue>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn int(mut self, name: &str, v: i64) -> Self {
        self.0.insert(name.to_string(), ParamValue::Int(v));
        self
    }

    pub fn rat(mut self, name: &str, v: Rational) -> Self {
        self.0.insert(name.to_string(), ParamValue::Rat(v));
        self
    }

    pub fn get_int(&self, name: &str) -> Result<i64> {
        match self.0.get(name) {
            Some(ParamValue::Int(v)) => Ok(*v),
            _ => Err(invalid(format!("missing integer parameter {name:?}"))),
        }
    }

    pub fn get_rat(&self, name: &str) -> Result<Rational> {
        match self.0.get(name) {
            Some(ParamValue::Rat(v)) => Ok(v.clone()),
            Some(ParamValue::Int(v)) => Ok(Rational::from(*v)),
            None => Err(invalid(format!("missing rational parameter {name:?}"))),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormRole {
    /// The display as stated.
    Printed,
    /// Declared correction of a display that does not hold as printed.
    Corrected,
}

impl fmt::Display for FormRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormRole::Printed => "printed",
            FormRole::Corrected => "corrected",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    PassWithKnownDiscrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::PassWithKnownDiscrepancy => "pass-with-known-discrepancy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub form: String,
    pub params: Params,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormOutcome {
    pub name: String,
    pub role: FormRole,
    pub tuples_checked: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub tuples_checked: usize,
    pub status: Status,
    /// Set when the box intersected with the hypotheses left nothing to check.
    pub vacuous: bool,
    pub failures: Vec<Failure>,
    pub forms: Vec<FormOutcome>,
}

impl IdentityReport {
    pub fn form(&self, name: &str) -> Option<&FormOutcome> {
        self.forms.iter().find(|f| f.name == name)
    }
}

/// Runs every form of `id` over `pbox`.
pub fn check(id: IdentityId, pbox: &ParamBox) -> IdentityReport {
    let mut outcomes = Vec::new();
    let mut failures = Vec::new();
    for form in forms::forms(id) {
        let tuples = (form.tuples)(pbox);
        let bad: Vec<Failure> = tuples
            .par_iter()
            .filter_map(|params| {
                let (lhs, rhs) = (form.eval)(params).unwrap_or_else(|e| {
                    panic!("{id}/{}: evaluation failed at {params}: {e}", form.name)
                });
                (lhs != rhs).then(|| Failure {
                    form: form.name.to_string(),
                    params: params.clone(),
                    lhs,
                    rhs,
                })
            })
            .collect();
        outcomes.push(FormOutcome {
            name: form.name.to_string(),
            role: form.role,
            tuples_checked: tuples.len(),
            failures: bad.len(),
        });
        failures.extend(bad);
    }
    let tuples_checked = outcomes.iter().map(|o| o.tuples_checked).sum();
    let status = if failures.is_empty() {
        Status::Pass
    } else {
        let only_printed_fail = outcomes
            .iter()
            .all(|o| o.failures == 0 || o.role == FormRole::Printed);
        let corrected_ran = outcomes
            .iter()
            .any(|o| o.role == FormRole::Corrected && o.tuples_checked > 0);
        if id.has_known_discrepancy() && only_printed_fail && corrected_ran {
            Status::PassWithKnownDiscrepancy
        } else {
            Status::Fail
        }
    };
    IdentityReport {
        id,
        tuples_checked,
        status,
        vacuous: tuples_checked == 0,
        failures,
        forms: outcomes,
    }
}

pub fn check_th1(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Th1, pbox)
}

pub fn check_th2(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Th2, pbox)
}

pub fn check_th3(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Th3SecondKind, pbox)
}

pub fn check_th4(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Th4SecondKind, pbox)
}

pub fn check_th5(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Th5Poly, pbox)
}

pub fn check_th6(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Th6PolySecond, pbox)
}

pub fn check_cor1(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Cor1Shifted, pbox)
}

pub fn check_cor2(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Cor2Bell, pbox)
}

pub fn check_annihilation(kind: crate::Kind, pbox: &ParamBox) -> IdentityReport {
    match kind {
        crate::Kind::First => check(IdentityId::Th7AnnihilationFirst, pbox),
        crate::Kind::Second => check(IdentityId::Th8AnnihilationSecond, pbox),
    }
}

pub fn check_lemma1(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Lemma1, pbox)
}

pub fn check_eq303(pbox: &ParamBox) -> IdentityReport {
    check(IdentityId::Eq303, pbox)
}

/// Runs the given identities (in parallel) and returns the reports in the
/// order of `ids`.
pub fn run_suite(ids: &[IdentityId], pbox: &ParamBox) -> Vec<IdentityReport> {
    ids.par_iter().map(|&id| check(id, pbox)).collect()
}

/// Like [`run_suite`] with identities given by name.
pub fn run_suite_named(names: &[&str], pbox: &ParamBox) -> Result<Vec<IdentityReport>> {
    let ids = names
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<IdentityId>>>()?;
    pbox.validate()?;
    Ok(run_suite(&ids, pbox))
}

/// `true` iff no report has status [`Status::Fail`].
pub fn suite_passed(reports: &[IdentityReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

/// Re-evaluates one stored tuple, returning `(lhs, rhs)`.
pub fn replay(id: IdentityId, form: &str, params: &Params) -> Result<(Rational, Rational)> {
    let f = forms::forms(id)
        .into_iter()
        .find(|f| f.name == form)
        .ok_or_else(|| invalid(format!("identity {id} has no form {form:?}")))?;
    (f.eval)(params)
}

/// Names and roles of the forms checked for `id`.
pub fn form_names(id: IdentityId) -> Vec<(&'static str, FormRole)> {
    forms::forms(id)
        .into_iter()
        .map(|f| (f.name, f.role))
        .collect()
}
