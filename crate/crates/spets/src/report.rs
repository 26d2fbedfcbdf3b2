//! Deterministic run reports and serde helpers for exact values.

use serde::Serializer;

use crate::arith::format::{format_cyclo, format_laurent};
use crate::arith::{CycloNum, LaurentX, RatFun};

pub fn ser_laurent<S: Serializer>(p: &LaurentX, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_laurent(p, "x"))
}

pub fn ser_cyclo<S: Serializer>(c: &CycloNum, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_cyclo(c))
}

pub fn ser_cyclo_vec<S: Serializer>(v: &[CycloNum], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_cyclo))
}

pub fn ser_ratfun<S: Serializer>(f: &RatFun, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratfun(f))
}

/// `num` or `(num)/(den)`.
pub fn format_ratfun(f: &RatFun) -> String {
    match f.to_laurent() {
        Some(p) => format_laurent(&p, "x"),
        None => format!("({})/({})", format_laurent(f.num(), "x"), format_laurent(f.den(), "x")),
    }
}

/// Outcome of one check inside a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// The offending label, point and value for failures; a summary otherwise.
    pub witness: serde_json::Value,
}

/// Everything needed to reproduce a run. Wall-clock timing is kept out of the
/// serialised form so that equal inputs give byte-identical JSON.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct RunReport {
    pub command: String,
    pub group: Option<String>,
    pub ell: Option<u64>,
    pub a: Option<u32>,
    pub q: Option<i64>,
    pub seed: u64,
    /// Images of roots of unity and other fixed branch choices.
    pub roots: std::collections::BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    #[serde(skip)]
    pub elapsed: std::time::Duration,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            command: command.to_string(),
            group: None,
            ell: None,
            a: None,
            q: None,
            seed,
            roots: Default::default(),
            checks: Vec::new(),
            elapsed: Default::default(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, witness: serde_json::Value) {
        let status = if pass { Status::Pass } else { Status::Fail };
        self.checks.push(CheckRecord { name: name.into(), status, witness });
    }

    pub fn skip(&mut self, name: impl Into<String>, why: &str) {
        self.checks.push(CheckRecord { name: name.into(), status: Status::Skip, witness: why.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// One line per check.
    pub fn human(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            s.push_str(&format!("{tag} {}", c.name));
            if c.status != Status::Pass {
                s.push_str(&format!("  {}", c.witness));
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_deterministic_and_ignores_timing() {
        let mut a = RunReport::new("check", 7);
        a.push("x", true, serde_json::json!({"n": 1}));
        a.skip("y", "not applicable");
        let mut b = a.clone();
        b.elapsed = std::time::Duration::from_secs(3);
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed());
        a.push("z", false, serde_json::json!("witness"));
        assert!(!a.passed());
        assert!(a.human().contains("FAIL z"));
    }
}
