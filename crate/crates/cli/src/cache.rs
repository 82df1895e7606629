//! On-disk result cache, enabled by `LCSQ_CACHE_DIR`.

use std::fs;
use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "LCSQ_CACHE_DIR";

pub struct ResultCache {
    dir: Option<PathBuf>,
}

impl ResultCache {
    pub fn from_env() -> ResultCache {
        ResultCache { dir: std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from) }
    }

    pub fn disabled() -> ResultCache {
        ResultCache { dir: None }
    }

    fn path<K: Serialize>(&self, key: &K) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let bytes = serde_json::to_vec(key).ok()?;
        let digest = Sha256::digest(&bytes);
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Some(dir.join(format!("{name}.json")))
    }

    /// A missing or unreadable entry is a miss.
    pub fn get<K: Serialize, V: DeserializeOwned>(&self, key: &K) -> Option<V> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put<K: Serialize, V: Serialize>(&self, key: &K, value: &V) -> anyhow::Result<()> {
        let Some(path) = self.path(key) else { return Ok(()) };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(value)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}
