use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Machine-readable outcome of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 over the input files and arguments, in order.
    pub inputs_digest: String,
    pub passed: bool,
    pub results: Value,
    pub residuals: BTreeMap<String, f64>,
    pub wall_time_s: f64,
}

/// Accumulates a report while a command runs.
pub struct Builder {
    command: String,
    hasher: Sha256,
    start: Instant,
    pub residuals: BTreeMap<String, f64>,
}

impl Builder {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_string(), hasher: Sha256::new(), start: Instant::now(), residuals: BTreeMap::new() }
    }

    pub fn input(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn residual(&mut self, name: &str, value: f64) {
        self.residuals.insert(name.to_string(), value);
    }

    pub fn finish(self, passed: bool, results: Value) -> Report {
        let digest = self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        Report {
            command: self.command,
            inputs_digest: digest,
            passed,
            results,
            residuals: self.residuals,
            wall_time_s: self.start.elapsed().as_secs_f64(),
        }
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, if self.passed { "PASS" } else { "FAIL" });
        if let Value::Object(m) = &self.results {
            for (k, v) in m {
                out.push_str(&format!("  {k}: {}\n", compact(v)));
            }
        }
        for (k, v) in &self.residuals {
            out.push_str(&format!("  residual {k}: {v:.3e}\n"));
        }
        out.push_str(&format!("  digest {}\n  wall time {:.3}s\n", &self.inputs_digest[..16], self.wall_time_s));
        out
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 200 {
        format!("{}…", &s[..s.char_indices().take_while(|(i, _)| *i < 200).last().map_or(0, |(i, c)| i + c.len_utf8())])
    } else {
        s
    }
}
