//! Report documents: stable JSON with a digest over everything but timing.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::RunConfig;
use crate::constructions::{Status, VerificationReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
}

/// The document without its timing block and digest; `serde_json::Map` keeps
/// keys sorted, so serialization is canonical.
fn stable_part(command: &str, report: &VerificationReport, config: &RunConfig) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config.stable(),
        "claim": report.claim,
        "group": report.group,
        "parameters": report.parameters,
        "checks": report.checks,
        "summary": {
            "pass": report.count(Status::Pass),
            "fail": report.count(Status::Fail),
            "observation": report.count(Status::Observation),
        },
        "conclusion": report.conclusion,
    })
}

pub fn stable_digest(command: &str, report: &VerificationReport, config: &RunConfig) -> String {
    let bytes = serde_json::to_vec(&stable_part(command, report, config)).expect("serializable");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn document(command: &str, report: &VerificationReport, config: &RunConfig) -> Value {
    let mut doc = stable_part(command, report, config);
    let obj = doc.as_object_mut().expect("object");
    obj.insert("stable_digest".into(), Value::String(stable_digest(command, report, config)));
    obj.insert(
        "timing".into(),
        json!({ "elapsed_ms": report.elapsed.as_millis() as u64, "threads": config.threads }),
    );
    doc
}

pub fn render_text(command: &str, report: &VerificationReport, config: &RunConfig) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} on {}\n", report.claim, report.group));
    for (k, v) in &report.parameters {
        out.push_str(&format!("  {k}: {v}\n"));
    }
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Observation => "note",
        };
        out.push_str(&format!("  [{tag}] {} {}: {}", c.name, c.subject, c.detail));
        if c.status != Status::Pass && !c.witness.is_null() {
            out.push_str(&format!("  witness {}", c.witness));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "{} pass, {} fail, {} observation\n{}\ndigest {}\n",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Observation),
        report.conclusion,
        stable_digest(command, report, config)
    ));
    out
}

/// Writes the report to `config.out`, or to `sink` when no path is set.
pub fn emit_report(
    command: &str,
    report: &VerificationReport,
    config: &RunConfig,
    sink: &mut dyn Write,
) -> std::io::Result<()> {
    let text = match config.format {
        Format::Json => serde_json::to_string_pretty(&document(command, report, config)).expect("serializable") + "\n",
        Format::Text => render_text(command, report, config),
    };
    match &config.out {
        Some(path) => write_with_context(path, &text),
        None => sink.write_all(text.as_bytes()),
    }
}

fn write_with_context(path: &Path, text: &str) -> std::io::Result<()> {
    std::fs::write(path, text).map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}
