use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// What a command produced, before it is wrapped into a [`Report`].
#[derive(Clone, Debug)]
pub struct Outcome {
    /// Canonical description of everything the result depends on.
    pub input: Value,
    pub result: Value,
    /// Human-readable rendering of `result`.
    pub text: Vec<String>,
    /// False when a check ran but did not hold (exit status 1).
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub args: Vec<String>,
    pub input: Value,
    pub input_digest: String,
    pub result: Value,
}

/// SHA-256 of the compact JSON of `input`. Object keys are sorted, so equal
/// inputs give equal digests.
pub fn digest(input: &Value) -> String {
    let bytes = serde_json::to_vec(input).expect("JSON values serialize");
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl Report {
    pub fn new(command: &str, args: Vec<String>, outcome: &Outcome) -> Self {
        Report {
            tool: "nfc",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            args,
            input: outcome.input.clone(),
            input_digest: digest(&outcome.input),
            result: outcome.result.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self, outcome: &Outcome) -> String {
        let mut lines =
            vec![format!("{} {} {}", self.tool, self.version, self.command), format!("input {}", self.input_digest)];
        lines.extend(outcome.text.iter().cloned());
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_ignores_key_order() {
        let a: Value = serde_json::from_str(r#"{"x": 1, "y": [2, 3]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"y": [2, 3], "x": 1}"#).unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_ne!(digest(&a), digest(&json!({"x": 2, "y": [2, 3]})));
        assert!(digest(&a).starts_with("sha256:"));
        assert_eq!(digest(&a).len(), 7 + 64);
    }
}
