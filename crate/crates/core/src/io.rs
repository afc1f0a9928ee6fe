//! Tangle JSON: `{"n": 2, "start": [2, 1], "rows": [[], [1], []]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tangle::Tangle;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TangleJson {
    n: usize,
    start: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

pub fn read_tangle(text: &str) -> Result<Tangle> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
    let raw: TangleJson =
        serde_json::from_value(value).map_err(|e| Error::SchemaViolation(e.to_string()))?;
    if raw.n != raw.start.len() {
        return Err(Error::SchemaViolation(format!(
            "\"n\" is {} but \"start\" has {} entries",
            raw.n,
            raw.start.len()
        )));
    }
    Tangle::new(Permutation::new(raw.start)?, raw.rows)
}

pub fn write_tangle(t: &Tangle) -> Result<String> {
    t.validate()?;
    let raw = TangleJson {
        n: t.n(),
        start: t.start.entries().to_vec(),
        rows: t.rows.clone(),
    };
    Ok(serde_json::to_string(&raw).expect("plain data serializes"))
}

pub fn read_tangle_file(path: &Path) -> Result<Tangle> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::MalformedJson(format!("{}: {e}", path.display())))?;
    read_tangle(&text)
}
