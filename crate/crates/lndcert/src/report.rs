//! Deterministic JSON reports. Field order is fixed by the struct layout,
//! witnesses are canonical renderings, and the only run-to-run variation is
//! the per-check timing field.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    /// The directive's canonical source line.
    pub directive: String,
    pub status: CheckStatus,
    /// Structured evidence: constants, exponents, verdicts, certificates.
    pub witnesses: serde_json::Value,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    /// SHA-256 of the input text.
    pub input_digest: String,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl Report {
    pub fn new(input_text: &str, checks: Vec<CheckResult>) -> Report {
        let mut hasher = Sha256::new();
        hasher.update(input_text.as_bytes());
        let digest = format!("sha256:{:x}", hasher.finalize());
        let summary = Summary {
            total: checks.len(),
            passed: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Pass)
                .count(),
            failed: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Fail)
                .count(),
            inconclusive: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Inconclusive)
                .count(),
        };
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: digest,
            checks,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Exit code contract: 0 all pass, 1 any fail, 2 inconclusive only.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }
}
