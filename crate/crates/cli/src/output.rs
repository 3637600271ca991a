use std::fs;
use std::io::Write;
use std::path::Path;

use klr_core::Result;
use serde_json::Value;

/// Pretty JSON with object keys sorted (serde_json maps are ordered by key).
pub fn canonical(value: &impl serde::Serialize) -> Result<String> {
    let v: Value = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// Single-line canonical JSON, for JSON-lines output.
pub fn canonical_line(value: &impl serde::Serialize) -> Result<String> {
    let v: Value = serde_json::to_value(value)?;
    Ok(serde_json::to_string(&v)?)
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
