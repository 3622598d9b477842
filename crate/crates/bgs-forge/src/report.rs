//! The JSONL experiment record: one self-describing line of JSON per result.
//!
//! Records echo every budget and cap that affected the result, so a line can
//! be reread without any external context. Field order is fixed by the
//! struct; `wall_time_ms` is the only field two identical invocations may
//! disagree on.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub wall_time_ms: u64,
    pub artifact_version: String,
}

impl ExperimentRecord {
    pub fn new(command: &str, parameters: Value, result: Value, wall_time_ms: u64) -> Self {
        ExperimentRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters,
            result,
            wall_time_ms,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// The record as one line of JSON, no trailing newline.
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn records_are_single_lines() {
        let record = ExperimentRecord::new(
            "demo",
            json!({"upto": 8, "var_cap": 26}),
            json!({"kind": "ok"}),
            3,
        );
        let line = record.to_line();
        assert!(!line.contains('\n'));
        let parsed: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(parsed["schema_version"], SCHEMA_VERSION);
        assert_eq!(parsed["command"], "demo");
        assert_eq!(parsed["parameters"]["upto"], 8);
    }
}
