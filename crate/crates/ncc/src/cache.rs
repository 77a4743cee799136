//! Content-addressed store of computed invariants.
//!
//! One JSON file per `(canonical input, invariant, tool version, caps)`,
//! named by the SHA-256 of those fields. Files are written to a temporary
//! name and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub input_hash: String,
    pub invariant: String,
    pub value: Value,
    pub micros: u64,
}

#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// `context` carries anything else the value depends on, such as caps.
    pub fn key(canonical: &str, invariant: &str, context: &str) -> String {
        let mut h = Sha256::new();
        for part in [canonical, invariant, VERSION, context] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.root.join(&key[..2]).join(format!("{key}.json"))
    }

    /// The stored entry, if present and recorded for the same input hash.
    pub fn get(&self, key: &str, input_hash: &str, invariant: &str) -> Option<Entry> {
        let bytes = fs::read(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_slice(&bytes).ok()?;
        (entry.input_hash == input_hash && entry.invariant == invariant).then_some(entry)
    }

    pub fn put(&self, key: &str, entry: &Entry) -> Result<()> {
        let path = self.path(key);
        let dir = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
        let bytes = serde_json::to_vec(entry).expect("entries serialize");
        write_atomic(&path, &bytes)
    }
}

/// Writes `bytes` to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(
        ".{name}.{}.{}.tmp",
        std::process::id(),
        TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    let io = |e| Error::io(path.display().to_string(), e);
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_fields() {
        let a = Cache::key("ab", "c", "");
        let b = Cache::key("a", "bc", "");
        assert_ne!(a, b);
        assert_eq!(a, Cache::key("ab", "c", ""));
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn entries_round_trip_and_check_the_input_hash() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = Cache::key("construct cyclic 4\n", "ncc", "");
        let entry = Entry {
            input_hash: "h1".into(),
            invariant: "ncc".into(),
            value: serde_json::json!(1),
            micros: 5,
        };
        cache.put(&key, &entry).unwrap();
        assert_eq!(cache.get(&key, "h1", "ncc"), Some(entry));
        assert_eq!(cache.get(&key, "h2", "ncc"), None);
        assert_eq!(cache.get(&key, "h1", "nac"), None);
        // no temporary files are left behind
        let leftovers = fs::read_dir(dir.path().join(&key[..2]))
            .unwrap()
            .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp"))
            .count();
        assert_eq!(leftovers, 0);
    }
}
