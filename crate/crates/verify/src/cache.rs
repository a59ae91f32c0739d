//! Content-addressed on-disk cache. Keys are SHA-256 digests of the item
//! kind, the code version and a canonical description; writes go through a
//! temporary file and an atomic rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::{Result, CODE_VERSION};

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(Cache { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn key(kind: &str, description: &str) -> String {
        let mut h = Sha256::new();
        for part in [kind, CODE_VERSION, description] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, kind: &str, key: &str) -> PathBuf {
        self.root.join(kind).join(key)
    }

    pub fn get(&self, kind: &str, description: &str) -> Option<Vec<u8>> {
        fs::read(self.path(kind, &Self::key(kind, description))).ok()
    }

    pub fn put(&self, kind: &str, description: &str, bytes: &[u8]) -> Result<()> {
        let target = self.path(kind, &Self::key(kind, description));
        let dir = target.parent().expect("cache entries live in a kind directory");
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".tmp-{}-{:?}", std::process::id(), std::thread::current().id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, &target)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_key_separation() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path()).unwrap();
        assert!(c.get("group", "Sp2(3)").is_none());
        c.put("group", "Sp2(3)", b"abc").unwrap();
        assert_eq!(c.get("group", "Sp2(3)").unwrap(), b"abc");
        assert!(c.get("table", "Sp2(3)").is_none());
        assert_ne!(Cache::key("a", "bc"), Cache::key("ab", "c"));
        c.put("group", "Sp2(3)", b"xyz").unwrap();
        assert_eq!(c.get("group", "Sp2(3)").unwrap(), b"xyz");
    }
}
