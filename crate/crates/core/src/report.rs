// SPDX-License-Identifier: Apache-2.0

//! Machine-readable verdicts shared by every verifier.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Witness lists are truncated to this many entries.
pub const MAX_WITNESSES: usize = 32;

/// Outcome of one check, serialized as
/// `{check, code, params, pass, witnesses[], histogram{}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub code: String,
    pub params: Value,
    pub pass: bool,
    pub witnesses: Vec<String>,
    pub histogram: BTreeMap<String, u64>,
}

impl Verdict {
    pub fn new(check: impl Into<String>, code: impl Into<String>, params: Value) -> Self {
        Self {
            check: check.into(),
            code: code.into(),
            params,
            pass: true,
            witnesses: Vec::new(),
            histogram: BTreeMap::new(),
        }
    }

    /// Records a violation; the verdict fails from here on.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.pass = false;
        self.bump("violations");
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness.into());
        }
    }

    /// Adds an informational note without affecting `pass`.
    pub fn note(&mut self, note: impl Into<String>) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(note.into());
        }
    }

    pub fn bump(&mut self, key: impl Into<String>) {
        self.add(key, 1);
    }

    pub fn add(&mut self, key: impl Into<String>, amount: u64) {
        *self.histogram.entry(key.into()).or_insert(0) += amount;
    }

    pub fn count(&self, key: &str) -> u64 {
        self.histogram.get(key).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        match self.witnesses.first() {
            Some(w) if !self.pass => format!("{status} {} [{}]: {w}", self.check, self.code),
            _ => format!("{status} {} [{}]", self.check, self.code),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn failing_keeps_bounded_witnesses() {
        let mut v = Verdict::new("demo", "code", json!({}));
        assert!(v.pass);
        for i in 0..100 {
            v.fail(format!("w{i}"));
        }
        assert!(!v.pass);
        assert_eq!(v.witnesses.len(), MAX_WITNESSES);
        assert_eq!(v.count("violations"), 100);
        let back: Verdict = serde_json::from_str(&v.to_json()).unwrap();
        assert_eq!(back, v);
    }
}
