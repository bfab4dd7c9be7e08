//! Three-valued probe reports.
//!
//! Finite evidence cannot refute an existential statement, so every probe
//! returns one of three verdicts: `HoldsOnEvidence` (a fit was found on the
//! whole evidence domain), `Violated` (a witness re-evaluates to a strict
//! violation / unbounded growth across shells), or `Inconclusive`.

use serde::{Deserialize, Serialize};

/// Probe outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnEvidence,
    Violated,
    Inconclusive,
}

/// Fitted constants for an inequality of the shape
/// `lhs <= C * rhs^exponent + D` (the exponent is `m`, `d`, `l` or `p`
/// depending on the probe).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub c: f64,
    pub exponent: u32,
    pub d: f64,
}

impl Fit {
    pub fn new(c: f64, exponent: u32, d: f64) -> Self {
        Self { c, exponent, d }
    }
}

/// Violation or growth witness: element literals with the log-domain values
/// that exhibit the failure.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Canonical text forms of the witness elements (or chains).
    pub elements: Vec<String>,
    /// Log-domain values backing the violation (e.g. required log C per
    /// shell).
    pub log_values: Vec<f64>,
    /// Human-readable description of what the values are.
    pub detail: String,
}

/// Where the evidence came from.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvidenceDomain {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_len_max: Option<u32>,
}

/// The result of one probe run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub verdict: Verdict,
    /// The checked condition, as a formula template (e.g.
    /// `sigma1 <= C*sigma2^m + D`).
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<Fit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub evidence: EvidenceDomain,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub notes: String,
}

impl ProbeReport {
    pub fn new(verdict: Verdict, condition: impl Into<String>) -> Self {
        Self {
            verdict,
            condition: condition.into(),
            fit: None,
            witness: None,
            evidence: EvidenceDomain::default(),
            notes: String::new(),
        }
    }

    pub fn with_fit(mut self, fit: Fit) -> Self {
        self.fit = Some(fit);
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_evidence(mut self, evidence: EvidenceDomain) -> Self {
        self.evidence = evidence;
        self
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnEvidence
    }
}
