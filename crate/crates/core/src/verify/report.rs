use std::cmp::Ordering;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::exact::fmt_rational;

/// A case parameter. Rationals serialize as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Int(i64),
    Rational(BigRational),
    Text(String),
}

impl Param {
    fn rank(&self) -> u8 {
        match self {
            Param::Int(_) => 0,
            Param::Rational(_) => 1,
            Param::Text(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Param::Int(v) => Value::from(*v),
            Param::Rational(r) => Value::from(fmt_rational(r)),
            Param::Text(t) => Value::from(t.clone()),
        }
    }
}

impl Ord for Param {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Param::Int(a), Param::Int(b)) => a.cmp(b),
            (Param::Rational(a), Param::Rational(b)) => a.cmp(b),
            (Param::Text(a), Param::Text(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Param {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u32> for Param {
    fn from(v: u32) -> Self {
        Param::Int(i64::from(v))
    }
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

impl From<&BigRational> for Param {
    fn from(v: &BigRational) -> Self {
        Param::Rational(v.clone())
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

/// Result of running one case.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub residual: Option<f64>,
    pub remainder_degree: Option<i64>,
    pub note: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Self {
            status: Status::Pass,
            residual: None,
            remainder_degree: None,
            note: None,
        }
    }

    pub fn fail(note: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            note: Some(note.into()),
            ..Self::pass()
        }
    }

    pub fn skipped(note: impl Into<String>) -> Self {
        Self {
            status: Status::Skipped,
            note: Some(note.into()),
            ..Self::pass()
        }
    }

    pub fn with_remainder_degree(mut self, deg: Option<i64>) -> Self {
        self.remainder_degree = deg;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Pass when `residual < tolerance`.
    pub fn numeric(residual: f64, tolerance: f64) -> Self {
        let status = if residual < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            status,
            residual: Some(residual),
            remainder_degree: None,
            note: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub check_id: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub residual: Option<f64>,
    pub remainder_degree: Option<i64>,
    pub ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogMeta {
    pub check_id: &'static str,
    pub anchor: &'static str,
    pub mode: Mode,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub catalog_version: &'static str,
    pub catalog: Vec<CatalogMeta>,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn cases_for<'a>(&'a self, check_id: &'a str) -> impl Iterator<Item = &'a CaseRecord> + 'a {
        self.cases.iter().filter(move |c| c.check_id == check_id)
    }
}

pub(crate) fn summarize(cases: &[CaseRecord]) -> Summary {
    let count = |s: Status| cases.iter().filter(|c| c.status == s).count();
    Summary {
        total: cases.len(),
        pass: count(Status::Pass),
        fail: count(Status::Fail),
        skipped: count(Status::Skipped),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn params_order_numerically() {
        assert!(Param::from(2u32) < Param::from(10u32));
        assert!(Param::from(&rat(1, 3)) < Param::from(&rat(1, 2)));
        assert!(Param::from(5u32) < Param::from(&rat(1, 3)));
        assert_eq!(Param::from(&rat(3, 5)).to_json(), Value::from("3/5"));
    }

    #[test]
    fn numeric_outcome_thresholds() {
        assert_eq!(Outcome::numeric(1e-12, 1e-10).status, Status::Pass);
        assert_eq!(Outcome::numeric(1e-9, 1e-10).status, Status::Fail);
        assert_eq!(Outcome::numeric(f64::NAN, 1e-10).status, Status::Fail);
    }
}
