//! On-disk cache for expensive expansions, keyed by series name, order, and
//! a digest binding the payload to the code version.  Entries that fail the
//! digest check are ignored and recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::series::QExp;

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Cache directory: $MOCKPROJ_CACHE, or ./.mockproj-cache.
pub fn cache_dir() -> PathBuf {
    match std::env::var_os("MOCKPROJ_CACHE") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(".mockproj-cache"),
    }
}

fn entry_path(dir: &Path, series: &str, order: i64) -> PathBuf {
    dir.join(format!("{}-{}.json", series, order))
}

/// Hex digest binding (code version, series, order, payload).
pub fn payload_digest(series: &str, order: i64, payload: &Value) -> String {
    let mut hasher = Sha256::new();
    hasher.update(CODE_VERSION.as_bytes());
    hasher.update(b"\0");
    hasher.update(series.as_bytes());
    hasher.update(b"\0");
    hasher.update(order.to_string().as_bytes());
    hasher.update(b"\0");
    hasher.update(payload.to_string().as_bytes());
    format!("{:x}", hasher.finalize())
}

/// Writes an entry; creates the directory if needed.
pub fn store_in(dir: &Path, series: &str, order: i64, payload: &Value) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("create {}: {}", dir.display(), e)))?;
    let entry = json!({
        "series": series,
        "order": order,
        "digest": payload_digest(series, order, payload),
        "payload": payload,
    });
    let path = entry_path(dir, series, order);
    fs::write(&path, entry.to_string())
        .map_err(|e| Error::Cache(format!("write {}: {}", path.display(), e)))?;
    Ok(())
}

/// Reads an entry if present and digest-consistent; None otherwise.
pub fn load_from(dir: &Path, series: &str, order: i64) -> Option<Value> {
    let path = entry_path(dir, series, order);
    let text = fs::read_to_string(path).ok()?;
    let entry: Value = serde_json::from_str(&text).ok()?;
    if entry["series"].as_str()? != series || entry["order"].as_i64()? != order {
        return None;
    }
    let digest = entry["digest"].as_str()?;
    let payload = entry.get("payload")?.clone();
    if digest != payload_digest(series, order, &payload) {
        return None;
    }
    Some(payload)
}

pub fn store(series: &str, order: i64, payload: &Value) -> Result<()> {
    store_in(&cache_dir(), series, order, payload)
}

pub fn load(series: &str, order: i64) -> Option<Value> {
    load_from(&cache_dir(), series, order)
}

/// Returns the cached expansion if a digest-consistent entry exists, else
/// computes it and stores the result.  Cache write failures are not fatal.
pub fn cached_qexp<F>(dir: &Path, series: &str, order: i64, compute: F) -> QExp
where
    F: FnOnce() -> QExp,
{
    if let Some(payload) = load_from(dir, series, order) {
        if let Ok(q) = QExp::from_json(&payload) {
            return q;
        }
    }
    let q = compute();
    let _ = store_in(dir, series, order, &q.to_json());
    q
}
