//! Report documents and their text and JSON renderings.

use std::fmt::Write as _;

use anyhow::anyhow;
use num_traits::ToPrimitive;
use serde::Serialize;

use toric_mirror::arith::format_rational;
use toric_mirror::{Int, Rat};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub check: String,
    pub instance: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl CheckResult {
    pub fn pass(check: &str, instance: impl Into<String>) -> Self {
        CheckResult {
            check: check.into(),
            instance: instance.into(),
            passed: true,
            witnesses: vec![],
        }
    }

    pub fn fail(check: &str, instance: impl Into<String>, witnesses: Vec<String>) -> Self {
        CheckResult {
            check: check.into(),
            instance: instance.into(),
            passed: false,
            witnesses,
        }
    }

    /// Passes iff `witnesses` is empty; keeps at most five of them.
    pub fn from_witnesses(check: &str, instance: impl Into<String>, mut witnesses: Vec<String>) -> Self {
        let total = witnesses.len();
        if total > 5 {
            witnesses.truncate(5);
            witnesses.push(format!("... {} more", total - 5));
        }
        CheckResult {
            check: check.into(),
            instance: instance.into(),
            passed: total == 0,
            witnesses,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Exact {
    pub value: String,
    pub numerator: String,
    pub denominator: String,
}

impl From<&Rat> for Exact {
    fn from(r: &Rat) -> Self {
        Exact {
            value: format_rational(r),
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesRecord {
    /// Exponent of `a`, one entry per variable.
    pub beta: Vec<i64>,
    /// Coordinates in the relation lattice basis.
    pub mori: Vec<i64>,
    pub degree: i64,
    pub coefficient: Exact,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesDocument {
    pub kind: &'static str,
    pub bound: u32,
    pub ample: Vec<i64>,
    pub v0: Vec<i64>,
    pub relation_basis: Vec<Vec<i64>>,
    pub records: Vec<SeriesRecord>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MixedRecord {
    pub k: Vec<u32>,
    pub kbar: Vec<u32>,
    pub mixed_volume: Exact,
    pub mixed_residue: Option<Exact>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub command: &'static str,
    pub problem: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mixed_volumes: Option<Vec<MixedRecord>>,
}

impl Report {
    pub fn new(command: &'static str, problem: &str) -> Self {
        Report {
            command,
            problem: problem.into(),
            passed: true,
            checks: vec![],
            series: None,
            mixed_volumes: None,
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = if self.passed { "ok" } else { "FAILED" };
        let _ = writeln!(out, "{} {}: {status}", self.command, self.problem);
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "  [{mark}] {} ({})", c.check, c.instance);
            for w in &c.witnesses {
                let _ = writeln!(out, "         {w}");
            }
        }
        if let Some(s) = &self.series {
            let _ = writeln!(out, "series ({}, bound {}, ample {:?}, v0 {:?})", s.kind, s.bound, s.ample, s.v0);
            for r in &s.records {
                let _ = writeln!(
                    out,
                    "  beta {:?}  mori {:?}  degree {}  coefficient {}",
                    r.beta, r.mori, r.degree, r.coefficient.value
                );
            }
        }
        if let Some(rows) = &self.mixed_volumes {
            let _ = writeln!(out, "mixed volumes");
            for r in rows {
                let residue = r.mixed_residue.as_ref().map_or("-", |e| e.value.as_str());
                let _ = writeln!(
                    out,
                    "  k {:?}  kbar {:?}  volume {}  residue {residue}",
                    r.k, r.kbar, r.mixed_volume.value
                );
            }
        }
        out
    }
}

pub fn small(v: &[Int]) -> anyhow::Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| anyhow!("integer {x} does not fit in 64 bits")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use toric_mirror::arith::rat;

    #[test]
    fn witnesses_are_capped() {
        let c = CheckResult::from_witnesses("x", "y", (0..8).map(|i| i.to_string()).collect());
        assert!(!c.passed);
        assert_eq!(c.witnesses.len(), 6);
        assert_eq!(c.witnesses[5], "... 3 more");
        assert!(CheckResult::from_witnesses("x", "y", vec![]).passed);
    }

    #[test]
    fn exact_strings() {
        let e = Exact::from(&rat(-6, 4));
        assert_eq!((e.value.as_str(), e.numerator.as_str(), e.denominator.as_str()), ("-3/2", "-3", "2"));
    }

    #[test]
    fn failures_propagate() {
        let mut r = Report::new("verify", "p");
        r.push(CheckResult::pass("a", "1"));
        assert!(r.passed);
        r.push(CheckResult::fail("b", "2", vec!["w".into()]));
        assert!(!r.passed);
        assert!(r.to_text().contains("[FAIL] b (2)"));
    }
}
