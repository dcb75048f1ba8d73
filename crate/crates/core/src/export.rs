//! Rendering of triangles, sequences and identity reports, and parsing of
//! sequence input.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactnum::Rational;
use crate::identities::IdentityReport;
use crate::stirling::r_stirling_row;
use crate::transforms::RatSequence;
use crate::Kind;

/// Token used for terms that are not determined.
pub const UNDETERMINED: &str = "?";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
    Bfile,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "bfile" => Ok(Format::Bfile),
            _ => Err(invalid(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleEntry {
    pub n: usize,
    pub m: usize,
    pub value: String,
}

/// Nonzero region of the `(kind, r)` triangle for rows `r..=n_max`:
/// `m` runs from `max(r, 1)` to `n`, except `m = 0` in row 0.
pub fn triangle_rows(kind: Kind, r: usize, n_max: usize) -> Vec<(usize, Vec<(usize, BigUint)>)> {
    (r..=n_max)
        .map(|n| {
            let row = r_stirling_row(kind, n, r);
            let lo = if n == 0 { 0 } else { r.max(1) };
            (n, (lo..=n).map(|m| (m, row[m].clone())).collect())
        })
        .collect()
}

pub fn render_triangle(kind: Kind, r: usize, n_max: usize, format: Format) -> Result<String> {
    let rows = triangle_rows(kind, r, n_max);
    let mut out = String::new();
    match format {
        Format::Text => {
            for (n, row) in &rows {
                let values: Vec<String> = row.iter().map(|(_, v)| v.to_string()).collect();
                writeln!(out, "{n}: {}", values.join(" ")).expect("write to string");
            }
        }
        Format::Csv => {
            out.push_str("n,m,value\n");
            for (n, row) in &rows {
                for (m, v) in row {
                    writeln!(out, "{n},{m},{v}").expect("write to string");
                }
            }
        }
        Format::Json => {
            let entries: Vec<TriangleEntry> = rows
                .iter()
                .flat_map(|(n, row)| {
                    row.iter().map(move |(m, v)| TriangleEntry {
                        n: *n,
                        m: *m,
                        value: v.to_string(),
                    })
                })
                .collect();
            out = to_json(&entries)?;
        }
        Format::Bfile => return Err(invalid("b-file output applies to sequences, not triangles")),
    }
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn term_text(t: Option<&Rational>) -> String {
    t.map_or_else(|| UNDETERMINED.to_string(), Rational::to_string)
}

/// Renders `seq`; b-file output requires every determined term to be an
/// integer and starts its index column at `bfile_offset`.
pub fn render_sequence(seq: &RatSequence, format: Format, bfile_offset: i64) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Text => {
            for (_, t) in seq.indexed() {
                writeln!(out, "{}", term_text(t)).expect("write to string");
            }
        }
        Format::Csv => {
            for (n, t) in seq.indexed() {
                writeln!(out, "{n},{}", term_text(t)).expect("write to string");
            }
        }
        Format::Json => out = to_json(seq)?,
        Format::Bfile => {
            if let Some((n, _)) = seq
                .indexed()
                .find(|(_, t)| t.is_some_and(|t| !t.is_integer()))
            {
                return Err(invalid(format!(
                    "b-file output needs integer terms; term {n} is not an integer"
                )));
            }
            for (i, (_, t)) in seq.indexed().enumerate() {
                if let Some(t) = t {
                    writeln!(out, "{} {t}", bfile_offset + i as i64).expect("write to string");
                }
            }
        }
    }
    Ok(out)
}

/// Parses comma- or newline-separated rationals. Blank entries and lines
/// starting with `#` are skipped.
pub fn parse_sequence(input: &str) -> Result<RatSequence> {
    let mut terms = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for field in line.split(',').map(str::trim).filter(|f| !f.is_empty()) {
            let value = field.parse::<Rational>().map_err(|_| Error::Input {
                line: idx + 1,
                message: format!("not a rational: {field:?}"),
            })?;
            terms.push(value);
        }
    }
    Ok(RatSequence::new(terms))
}

pub fn reports_to_json(reports: &[IdentityReport]) -> Result<String> {
    to_json(&reports)
}

pub fn reports_from_json(input: &str) -> Result<Vec<IdentityReport>> {
    serde_json::from_str(input).map_err(|e| invalid(format!("malformed report JSON: {e}")))
}

/// One line per identity, then one line per failing tuple (at most
/// `max_failures` per identity).
pub fn reports_to_text(reports: &[IdentityReport], max_failures: usize) -> String {
    let mut out = String::new();
    let width = reports.iter().map(|r| r.id.name().len()).max().unwrap_or(0);
    for report in reports {
        let vacuous = if report.vacuous { "  (vacuous)" } else { "" };
        writeln!(
            out,
            "{:<width$}  {:<26}  {:>7} tuples  {:>5} failures{vacuous}",
            report.id.name(),
            report.status.to_string(),
            report.tuples_checked,
            report.failures.len(),
        )
        .expect("write to string");
        for form in &report.forms {
            writeln!(
                out,
                "{:<width$}    {} [{}] {}/{} ok",
                "",
                form.name,
                form.role,
                form.tuples_checked - form.failures,
                form.tuples_checked
            )
            .expect("write to string");
        }
        for f in report.failures.iter().take(max_failures) {
            writeln!(
                out,
                "{:<width$}    ! {} at {}: lhs={} rhs={}",
                "", f.form, f.params, f.lhs, f.rhs
            )
            .expect("write to string");
        }
        if report.failures.len() > max_failures {
            writeln!(
                out,
                "{:<width$}    ! ... {} more",
                "",
                report.failures.len() - max_failures
            )
            .expect("write to string");
        }
    }
    out
}
