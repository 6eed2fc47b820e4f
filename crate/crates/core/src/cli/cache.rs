//! Result cache keyed by a hash of the canonical job description.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "EQTRACE_CACHE_DIR";

/// Version tag stored in every entry; entries from other versions are ignored.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: String,
    pub key: String,
    pub ok: bool,
    pub result: Value,
}

/// `$EQTRACE_CACHE_DIR`, else `$XDG_CACHE_HOME/eqtrace`, else `~/.cache/eqtrace`.
pub fn default_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("eqtrace"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("eqtrace"))
}

/// Hash of the job. `serde_json` keeps object keys sorted, so the
/// serialization ignores key order and whitespace of the inputs.
pub fn key(command: &str, params: &Value, inputs: &[Value]) -> String {
    let canonical = serde_json::json!({ "version": VERSION, "command": command, "params": params, "inputs": inputs });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

pub fn lookup(dir: &Path, key: &str) -> Option<CacheEntry> {
    let text = std::fs::read_to_string(dir.join(format!("{key}.json"))).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    (entry.version == VERSION && entry.key == key).then_some(entry)
}

/// Best effort: a cache that cannot be written is skipped.
pub fn store(dir: &Path, entry: &CacheEntry) {
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let tmp = dir.join(format!("{}.tmp{}", entry.key, std::process::id()));
    if let Ok(text) = serde_json::to_string(entry) {
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, dir.join(format!("{}.json", entry.key)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_ignores_layout() {
        let a: Value = serde_json::from_str(r#"{"b": 1, "a": [1, 2]}"#).unwrap();
        let b: Value = serde_json::from_str("{\n  \"a\": [1,2],\n  \"b\": 1\n}").unwrap();
        let p = serde_json::json!({ "depth": 3 });
        assert_eq!(key("hh compute", &p, &[a.clone()]), key("hh compute", &p, &[b]));
        assert_ne!(key("hh compute", &p, &[a.clone()]), key("koszul check", &p, &[a]));
    }

    #[test]
    fn stale_versions_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let entry = CacheEntry { version: "0.0.0-old".into(), key: "k".into(), ok: true, result: Value::Null };
        store(dir.path(), &entry);
        assert!(lookup(dir.path(), "k").is_none());
        let fresh = CacheEntry { version: VERSION.into(), ..entry };
        store(dir.path(), &fresh);
        assert_eq!(lookup(dir.path(), "k"), Some(fresh));
    }
}
