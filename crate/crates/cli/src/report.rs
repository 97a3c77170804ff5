//! Versioned report documents: a fixed header (schema version, command,
//! input hash, seed) plus a command-specific payload, rendered as JSON or
//! text.  Rendering is byte-reproducible for fixed inputs and seed.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report<P: Serialize> {
    pub schema_version: u32,
    pub command: String,
    pub input_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub payload: P,
}

impl<P: Serialize> Report<P> {
    pub fn new(command: &str, inputs: &[&str], seed: Option<u64>, payload: P) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input_hash: input_hash(inputs),
            seed,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }

    /// Text rendering: the header lines followed by the payload's lines.
    pub fn to_text(&self, payload_text: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# polycell {} (schema {})\n",
            self.command, self.schema_version
        ));
        out.push_str(&format!("# input {}\n", self.input_hash));
        if let Some(seed) = self.seed {
            out.push_str(&format!("# seed {seed}\n"));
        }
        out.push_str(payload_text);
        out
    }
}

pub fn input_hash(inputs: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for i in inputs {
        hasher.update(i.as_bytes());
        hasher.update([0u8]);
    }
    format!("sha256:{:x}", hasher.finalize())
}
