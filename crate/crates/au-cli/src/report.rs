//! Machine-readable run reports.
//!
//! Every command can emit a JSON document with the same top-level shape:
//! `{command, inputs, results, seed?, tool_version}`. Re-running with the
//! same inputs, seed, and tool version reproduces the document byte for
//! byte; numbers are written in shortest round-trip form, so no precision is
//! lost.

use crate::CliError;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub command: String,
    pub inputs: serde_json::Value,
    pub results: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tool_version: String,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, inputs: serde_json::Value, results: T, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            results,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn render(&self) -> Result<String, CliError> {
        serde_json::to_string_pretty(self)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Data(format!("cannot serialize report: {e}")))
    }
}

/// Write text to a path, or to stdout when the path is "-".
pub fn write_output(target: &Path, text: &str) -> Result<(), CliError> {
    if target.as_os_str() == "-" {
        print!("{text}");
        std::io::stdout()
            .flush()
            .map_err(|e| CliError::Data(format!("stdout: {e}")))
    } else {
        std::fs::write(target, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", target.display())))
    }
}
