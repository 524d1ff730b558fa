//! Process-wide reduction-basis cache with optional on-disk persistence.
//!
//! Entries are keyed by a content hash of the generating data and the term
//! order. Disk entries record their key and are ignored on mismatch.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::groebner::{ReductionBasis, StoredBasis};
use super::order::TermOrder;

struct Cache {
    entries: RwLock<HashMap<String, Arc<ReductionBasis>>>,
    dir: RwLock<Option<PathBuf>>,
    writer: Mutex<()>,
    computed: AtomicUsize,
}

fn cache() -> &'static Cache {
    static CACHE: std::sync::OnceLock<Cache> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| Cache {
        entries: RwLock::new(HashMap::new()),
        dir: RwLock::new(None),
        writer: Mutex::new(()),
        computed: AtomicUsize::new(0),
    })
}

pub fn hash_text(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Directory for persisted bases; `None` disables persistence.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache().dir.write().unwrap() = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    cache().dir.read().unwrap().clone()
}

/// Drops all in-memory entries.
pub fn clear_memory() {
    cache().entries.write().unwrap().clear();
}

/// Number of bases computed from scratch in this process.
pub fn computed_count() -> usize {
    cache().computed.load(Ordering::Relaxed)
}

#[derive(Serialize, Deserialize)]
struct DiskEntry {
    key: String,
    basis: StoredBasis,
}

pub fn get_or_compute(key: &str, order: &TermOrder, weights: &[u32], compute: impl FnOnce() -> ReductionBasis) -> Arc<ReductionBasis> {
    let c = cache();
    if let Some(b) = c.entries.read().unwrap().get(key) {
        return b.clone();
    }
    let dir = cache_dir();
    let path = dir.as_ref().map(|d| d.join(format!("{key}.json")));
    if let Some(p) = &path {
        if let Some(b) = load(p, key, order, weights) {
            let b = Arc::new(b);
            c.entries.write().unwrap().entry(key.to_string()).or_insert(b.clone());
            return b;
        }
    }
    let b = Arc::new(compute());
    c.computed.fetch_add(1, Ordering::Relaxed);
    let _guard = c.writer.lock().unwrap();
    let b = c.entries.write().unwrap().entry(key.to_string()).or_insert(b).clone();
    if let (Some(d), Some(p)) = (dir, path) {
        let entry = DiskEntry { key: key.to_string(), basis: b.to_stored() };
        if std::fs::create_dir_all(&d).is_ok() {
            if let Ok(text) = serde_json::to_string(&entry) {
                let tmp = d.join(format!("{key}.json.tmp{}", std::process::id()));
                if std::fs::write(&tmp, text).is_ok() {
                    let _ = std::fs::rename(&tmp, &p);
                }
            }
        }
    }
    b
}

fn load(path: &PathBuf, key: &str, order: &TermOrder, weights: &[u32]) -> Option<ReductionBasis> {
    let text = std::fs::read_to_string(path).ok()?;
    let entry: DiskEntry = serde_json::from_str(&text).ok()?;
    if entry.key != key {
        return None;
    }
    ReductionBasis::from_stored(&entry.basis, order, weights)
}
