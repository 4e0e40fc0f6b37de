//! Append-only JSONL store of computed results keyed by a digest of `(module, inputs)`.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub module: String,
    pub inputs: Value,
    pub output: Value,
}

/// `sha256(module || 0x00 || canonical JSON of inputs)` in hex. Object keys
/// serialize sorted, so equal inputs give equal keys.
pub fn cache_key(module: &str, inputs: &Value) -> String {
    let mut h = Sha256::new();
    h.update(module.as_bytes());
    h.update([0u8]);
    h.update(inputs.to_string().as_bytes());
    hex(&h.finalize())
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, Value>,
    pending: Vec<CacheEntry>,
}

impl Cache {
    pub fn in_memory() -> Self {
        Cache::default()
    }

    /// Opens `path`, reading any entries a previous run left. A truncated
    /// final line (interrupted write) is ignored.
    pub fn open(path: &Path) -> CliResult<Self> {
        let mut cache = Cache { path: Some(path.to_path_buf()), ..Default::default() };
        match std::fs::read_to_string(path) {
            Ok(text) => {
                for line in text.lines().filter(|l| !l.trim().is_empty()) {
                    if let Ok(e) = serde_json::from_str::<CacheEntry>(line) {
                        cache.entries.insert(e.key, e.output);
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(CliError::io(path, e)),
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, module: &str, inputs: Value, output: Value) {
        let key = cache_key(module, &inputs);
        if self.entries.contains_key(&key) {
            return;
        }
        self.entries.insert(key.clone(), output.clone());
        self.pending.push(CacheEntry { key, module: module.into(), inputs, output });
    }

    /// Appends entries added since the last flush.
    pub fn flush(&mut self) -> CliResult<()> {
        let Some(path) = &self.path else {
            self.pending.clear();
            return Ok(());
        };
        if self.pending.is_empty() {
            return Ok(());
        }
        let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(|e| CliError::io(path, e))?;
        let mut buf = Vec::new();
        for e in self.pending.drain(..) {
            serde_json::to_writer(&mut buf, &e)?;
            buf.push(b'\n');
        }
        f.write_all(&buf).map_err(|e| CliError::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn key_ignores_object_key_order() {
        let a: Value = serde_json::from_str(r#"{"v0": 1.5, "d": 3}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"d": 3, "v0": 1.5}"#).unwrap();
        assert_eq!(cache_key("solve", &a), cache_key("solve", &b));
        assert_ne!(cache_key("solve", &a), cache_key("critical", &a));
    }

    #[test]
    fn entries_survive_reopen_and_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cache.jsonl");
        let mut c = Cache::open(&p).unwrap();
        c.insert("m", json!({"x": 1}), json!(2.5));
        c.flush().unwrap();
        std::fs::OpenOptions::new().append(true).open(&p).unwrap().write_all(b"{\"key\": \"trunc").unwrap();
        let c = Cache::open(&p).unwrap();
        assert_eq!(c.get(&cache_key("m", &json!({"x": 1}))), Some(&json!(2.5)));
        assert_eq!(c.len(), 1);
    }
}
