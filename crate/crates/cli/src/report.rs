//! Report assembly and rendering.
//!
//! Every verb produces one [`Report`]: an ordered list of machine-readable
//! `key: value` fields plus the human narrative lines. `--format kv` prints
//! the fields, `--format text` the narrative. Both renderings are fully
//! deterministic; the only line that varies between runs is the optional
//! timing line, which exists only under `--timings` and is therefore outside
//! the byte-identity guarantee.

use std::fmt::Display;

/// Output format selector, set by `--format`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Human-readable narrative lines.
    Text,
    /// Machine-readable `key: value` lines for diffing in CI.
    Kv,
}

#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, String)>,
    narrative: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// A machine field that reads fine as its own text line too.
    pub fn both(&mut self, key: &str, value: impl Display) {
        let rendered = value.to_string();
        self.narrative.push(format!("{key} = {rendered}"));
        self.fields.push((key.to_string(), rendered));
    }

    /// A machine field with a separately worded narrative line.
    pub fn field(&mut self, key: &str, value: impl Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    /// A narrative-only line.
    pub fn note(&mut self, line: impl Into<String>) {
        self.narrative.push(line.into());
    }

    /// Render to stdout text.
    pub fn render(&self, format: Format, millis: Option<u128>) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for line in &self.narrative {
                    out.push_str(line);
                    out.push('\n');
                }
                if let Some(ms) = millis {
                    out.push_str(&format!("time: {ms} ms\n"));
                }
            }
            Format::Kv => {
                for (key, value) in &self.fields {
                    out.push_str(&format!("{key}: {value}\n"));
                }
                if let Some(ms) = millis {
                    out.push_str(&format!("time_ms: {ms}\n"));
                }
            }
        }
        out
    }
}
