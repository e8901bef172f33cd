//! Machine-readable check reports and the runtime configuration carried in
//! their provenance hash.

use crate::form::Form;
use crate::poly::Poly;
use crate::scalar::int;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl CheckRecord {
    pub fn pass(name: &str, detail: impl Into<String>) -> CheckRecord {
        CheckRecord { name: name.to_string(), status: Status::Pass, detail: detail.into(), elapsed_ms: None }
    }

    pub fn fail(name: &str, detail: impl Into<String>) -> CheckRecord {
        CheckRecord { name: name.to_string(), status: Status::Fail, detail: detail.into(), elapsed_ms: None }
    }

    pub fn error(name: &str, detail: impl Into<String>) -> CheckRecord {
        CheckRecord { name: name.to_string(), status: Status::Error, detail: detail.into(), elapsed_ms: None }
    }
}

/// Full report envelope; summary counts always equal the record tallies.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

impl Report {
    pub fn new(command: String, config_hash: String, seed: u64, checks: Vec<CheckRecord>) -> Report {
        let summary = Summary {
            pass: checks.iter().filter(|c| c.status == Status::Pass).count(),
            fail: checks.iter().filter(|c| c.status == Status::Fail).count(),
            error: checks.iter().filter(|c| c.status == Status::Error).count(),
        };
        Report { schema: "holocalc-report/1", command, config_hash, seed, checks, summary }
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 && self.summary.error == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization")
    }

    /// Aligned text table, one row per check.
    pub fn to_table(&self) -> String {
        let name_w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut out = String::new();
        out.push_str(&format!("{:<name_w$}  {:<6}  detail\n", "name", "status"));
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            out.push_str(&format!("{:<name_w$}  {:<6}  {}\n", c.name, status, c.detail));
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} error (config {})\n",
            self.summary.pass, self.summary.fail, self.summary.error, self.config_hash
        ));
        out
    }
}

/// Runtime configuration: the coordinate model of the G2 3-form and the
/// catalog enumeration bounds. Hashed into every report for provenance.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Config {
    /// Signed index triples of the model 3-form.
    pub phi0: Vec<(Vec<u8>, i64)>,
    pub an_n_max: usize,
    pub wcp2_max_weight: i64,
    pub s3r4_max: i64,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            phi0: vec![
                (vec![1, 2, 3], 1),
                (vec![1, 4, 5], 1),
                (vec![1, 6, 7], 1),
                (vec![2, 4, 6], 1),
                (vec![2, 5, 7], -1),
                (vec![3, 4, 7], -1),
                (vec![3, 5, 6], -1),
            ],
            an_n_max: 50,
            wcp2_max_weight: 30,
            s3r4_max: 30,
        }
    }
}

impl Config {
    pub fn from_json_str(s: &str) -> Result<Config, String> {
        // partial configs overlay the defaults
        let overlay: serde_json::Value =
            serde_json::from_str(s).map_err(|e| format!("config parse error: {e}"))?;
        let mut base = serde_json::to_value(Config::default()).expect("default config");
        if let (Some(base_map), Some(over_map)) = (base.as_object_mut(), overlay.as_object()) {
            for (k, v) in over_map {
                if !base_map.contains_key(k) {
                    return Err(format!("unknown config key {k:?}"));
                }
                base_map.insert(k.clone(), v.clone());
            }
        } else {
            return Err("config must be a JSON object".to_string());
        }
        serde_json::from_value(base).map_err(|e| format!("config validation error: {e}"))
    }

    /// Stable provenance hash of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(&json!({
            "phi0": self.phi0,
            "an_n_max": self.an_n_max,
            "wcp2_max_weight": self.wcp2_max_weight,
            "s3r4_max": self.s3r4_max,
        }))
        .expect("config serialization");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        format!("{:x}", hasher.finalize())[..16].to_string()
    }

    pub fn phi0_form(&self) -> Form {
        let mut phi = Form::zero(7, 3);
        for (idx, c) in &self.phi0 {
            phi = phi.add(&Form::monomial(7, idx, Poly::constant(7, int(*c))));
        }
        phi
    }

    pub fn is_default_phi0(&self) -> bool {
        self.phi0 == Config::default().phi0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_match_records() {
        let r = Report::new(
            "verify test".into(),
            Config::default().hash(),
            7,
            vec![CheckRecord::pass("a", ""), CheckRecord::fail("b", "boom")],
        );
        assert_eq!(r.summary.pass, 1);
        assert_eq!(r.summary.fail, 1);
        assert_eq!(r.exit_code(), 1);
        let ok = Report::new("x".into(), "h".into(), 0, vec![CheckRecord::pass("a", "")]);
        assert_eq!(ok.exit_code(), 0);
    }

    #[test]
    fn config_hash_is_stable_and_sensitive() {
        let d = Config::default();
        assert_eq!(d.hash(), Config::default().hash());
        let mut other = Config::default();
        other.an_n_max = 51;
        assert_ne!(d.hash(), other.hash());
    }

    #[test]
    fn config_overlay_and_validation() {
        let c = Config::from_json_str(r#"{"an_n_max": 10}"#).unwrap();
        assert_eq!(c.an_n_max, 10);
        assert_eq!(c.wcp2_max_weight, Config::default().wcp2_max_weight);
        assert!(Config::from_json_str(r#"{"bogus": 1}"#).is_err());
        assert!(Config::from_json_str("not json").is_err());
    }

    #[test]
    fn default_phi0_matches_model() {
        assert_eq!(Config::default().phi0_form(), crate::g2::standard_phi());
    }
}
