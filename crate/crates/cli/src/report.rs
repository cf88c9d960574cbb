use serde::{Deserialize, Serialize};

use ngcl_core::taxonomy::{Stats, Witness};

/// Machine-readable result of one claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub corpus: Option<String>,
    pub seed: Option<u64>,
    /// Wall-clock time, only recorded with `--timings`.
    pub duration_ms: Option<u64>,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
}

/// Everything one invocation produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub command: Vec<String>,
    pub space: Option<String>,
    pub corpus: Option<String>,
    pub seed: Option<u64>,
    pub results: Vec<ClaimReport>,
}

impl RunReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }
}
