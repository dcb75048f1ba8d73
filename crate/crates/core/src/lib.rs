//! Exact computation of r-Stirling numbers and the poly-Cauchy family, the
//! r-Stirling transforms relating them, and mechanical checkers for the
//! identities connecting them.
//!
//! * [`exactnum`]: rationals, polynomials and truncated power series
//! * [`stirling`]: memoized r-Stirling triangles and their cross-checks
//! * [`sequences`]: poly-Cauchy numbers/polynomials, harmonic numbers, Bell polynomials
//! * [`transforms`]: binomial, Stirling and r-Stirling transforms
//! * [`identities`]: parameterized identity checkers and the suite runner
//! * [`export`]: text/CSV/JSON/b-file rendering

pub mod error;
pub mod exactnum;
pub mod export;
pub mod identities;
pub mod sequences;
pub mod stirling;
pub mod transforms;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use exactnum::{PowerSeries, RatPolynomial, Rational};
pub use identities::{IdentityId, IdentityReport, ParamBox, Status};
pub use transforms::RatSequence;

/// First or second kind; used for Stirling triangles and poly-Cauchy numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::First => "first",
            Kind::Second => "second",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "1" => Ok(Kind::First),
            "second" | "2" => Ok(Kind::Second),
            _ => Err(error::invalid(format!(
                "kind must be first or second, got {s:?}"
            ))),
        }
    }
}
