//! Verification records: one JSON line per sub-check, byte-stable for fixed
//! inputs and engine version. Wall-clock timings are opt-in because they
//! would break that stability.

use std::collections::BTreeMap;

use serde::Serialize;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct VerificationRecord {
    pub suite: String,
    pub check: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, i64>,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub engine: &'static str,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub fixtures: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl VerificationRecord {
    pub fn new(suite: &str, check: impl Into<String>, pass: bool) -> Self {
        VerificationRecord {
            suite: suite.to_string(),
            check: check.into(),
            params: BTreeMap::new(),
            verdict: if pass { "pass" } else { "fail" },
            detail: None,
            engine: ENGINE_VERSION,
            fixtures: BTreeMap::new(),
            elapsed_ms: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_fixture(mut self, name: &str, hash: String) -> Self {
        self.fixtures.insert(name.to_string(), hash);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

/// FNV-1a 64-bit content hash, rendered as fixed-width hex. Used to stamp
/// records with the exact presentation text they verified.
pub fn fnv1a64(data: &str) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in data.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_is_stable() {
        assert_eq!(fnv1a64(""), "cbf29ce484222325");
        assert_eq!(fnv1a64("a"), fnv1a64("a"));
        assert_ne!(fnv1a64("a"), fnv1a64("b"));
    }

    #[test]
    fn record_serialization_is_compact() {
        let rec = VerificationRecord::new("lemma21", "k3-vanishing-set", true)
            .with_param("k", 3)
            .with_param("max", 2048);
        let line = serde_json::to_string(&rec).unwrap();
        assert!(line.contains("\"verdict\":\"pass\""));
        assert!(!line.contains("elapsed_ms"));
    }
}
