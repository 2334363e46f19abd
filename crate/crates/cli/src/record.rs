//! Experiment records and atomic output.

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

pub const RECORD_SCHEMA_VERSION: u32 = 1;

/// Everything a run writes in JSON mode. `results` depends only on the
/// configuration, so identical configurations give identical `results`.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: Value,
    pub results: Value,
    pub timings: Timings,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub elapsed_ms: u64,
}

impl ExperimentRecord {
    pub fn new(
        command: &'static str,
        config: impl Serialize,
        results: impl Serialize,
        started: Instant,
    ) -> Result<Self> {
        Ok(ExperimentRecord {
            schema_version: RECORD_SCHEMA_VERSION,
            tool: "monolab",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config: serde_json::to_value(config)?,
            results: serde_json::to_value(results)?,
            timings: Timings {
                elapsed_ms: started.elapsed().as_millis() as u64,
            },
        })
    }

    pub fn to_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Writes to `path` through a sibling temporary file and a rename, or to
/// stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        out.write_all(bytes)?;
        return Ok(out.flush()?);
    };
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .with_context(|| format!("{} is not a file path", path.display()))?
        .to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write()
        .inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
        .with_context(|| format!("writing {}", path.display()))
}

/// The `results` member of a record, or the whole document if it is not one.
pub fn payload(doc: Value) -> Value {
    match doc {
        Value::Object(mut map)
            if map.contains_key("schemaVersion") && map.contains_key("results") =>
        {
            map.remove("results").unwrap_or(Value::Null)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn payload_unwraps_records() {
        let rec = json!({"schemaVersion": 1, "results": {"a": 1}});
        assert_eq!(payload(rec), json!({"a": 1}));
        assert_eq!(payload(json!([1, 2])), json!([1, 2]));
    }
}
