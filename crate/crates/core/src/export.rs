//! Byte-stable serialization shared by the CLI and the test suites.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Pretty JSON with object keys sorted and a trailing LF.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    // serde_json's default map is ordered, so going through `Value` sorts keys.
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Write `content` to `path`, normalizing line endings to LF.
pub fn write_file(path: &Path, content: &str) -> std::io::Result<()> {
    std::fs::write(path, content.replace("\r\n", "\n"))
}
