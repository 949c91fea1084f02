use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub r: u32,
    pub n: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub target: String,
    /// Inclusive.
    pub r_range: (u32, u32),
    /// Inclusive range of sequence indices examined.
    pub n_range: (usize, usize),
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    pub fitted_constants: BTreeMap<String, String>,
    /// Discrepancies worth a reader's attention that do not change the
    /// status.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// An empty report, verified until a counterexample arrives.
    pub fn new(target: impl Into<String>, r_range: (u32, u32), n_range: (usize, usize)) -> Self {
        Self {
            target: target.into(),
            r_range,
            n_range,
            status: Status::Verified,
            counterexamples: Vec::new(),
            fitted_constants: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn refute(&mut self, c: Counterexample) {
        self.status = Status::Refuted;
        self.counterexamples.push(c);
    }

    /// Downgrades a verified report; a refutation stands.
    pub fn inconclusive(&mut self, why: impl Into<String>) {
        if self.status == Status::Verified {
            self.status = Status::Inconclusive;
        }
        self.notes.push(why.into());
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// Combines per-`r` reports of one target.
    pub fn merge(target: impl Into<String>, parts: &[VerificationReport]) -> Self {
        let r_range = (
            parts.iter().map(|p| p.r_range.0).min().unwrap_or(0),
            parts.iter().map(|p| p.r_range.1).max().unwrap_or(0),
        );
        let n_range = (
            parts.iter().map(|p| p.n_range.0).min().unwrap_or(0),
            parts.iter().map(|p| p.n_range.1).max().unwrap_or(0),
        );
        let mut out = Self::new(target, r_range, n_range);
        for p in parts {
            out.counterexamples.extend(p.counterexamples.iter().cloned());
            out.fitted_constants
                .extend(p.fitted_constants.iter().map(|(k, v)| (k.clone(), v.clone())));
            out.notes.extend(p.notes.iter().cloned());
        }
        out.status = if parts.iter().any(|p| p.status == Status::Refuted) {
            Status::Refuted
        } else if parts.iter().any(|p| p.status == Status::Inconclusive) || parts.is_empty() {
            Status::Inconclusive
        } else {
            Status::Verified
        };
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} (r {}..={}, n {}..={}, {} counterexamples)",
            self.target,
            self.status,
            self.r_range.0,
            self.r_range.1,
            self.n_range.0,
            self.n_range.1,
            self.counterexamples.len()
        )
    }
}
