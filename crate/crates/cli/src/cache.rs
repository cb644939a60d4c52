//! Content-addressed cache of command results.
//!
//! Entries live at `<root>/<first two hex digits>/<sha256>.json` and are
//! written to a temporary file first, then renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "KOSZUL_FORGE_CACHE";

static COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

/// Key over every input that influences a result.
pub fn cache_key(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        // length prefix keeps ("ab", "c") and ("a", "bc") apart
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    /// Opens (creating if needed) a cache directory. Returns `None` with a
    /// warning on stderr when the directory cannot be used.
    pub fn open(root: &Path) -> Option<Cache> {
        if let Err(e) = fs::create_dir_all(root) {
            eprintln!("warning: cache directory {} unusable ({e}); continuing without cache", root.display());
            return None;
        }
        let probe = root.join(format!(".probe-{}", std::process::id()));
        match fs::write(&probe, b"") {
            Ok(()) => {
                let _ = fs::remove_file(&probe);
                Some(Cache { root: root.to_path_buf() })
            }
            Err(e) => {
                eprintln!("warning: cache directory {} not writable ({e}); continuing without cache", root.display());
                None
            }
        }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.root.join(&key[..2]).join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Vec<u8>> {
        fs::read(self.path(key)).ok()
    }

    /// Entries are immutable: an existing entry is left untouched.
    pub fn put(&self, key: &str, value: &[u8]) -> std::io::Result<()> {
        let dest = self.path(key);
        if dest.exists() {
            return Ok(());
        }
        let dir = dest.parent().expect("entry has a parent");
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(value)?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, &dest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("kf-cache-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn put_then_get() {
        let c = Cache::open(&scratch("roundtrip")).unwrap();
        let k = cache_key(&["hilbert", "{}"]);
        assert_eq!(c.get(&k), None);
        c.put(&k, b"{\"a\":1}").unwrap();
        assert_eq!(c.get(&k).unwrap(), b"{\"a\":1}");
        // immutable once written
        c.put(&k, b"other").unwrap();
        assert_eq!(c.get(&k).unwrap(), b"{\"a\":1}");
    }

    #[test]
    fn keys_separate_parts() {
        assert_ne!(cache_key(&["ab", "c"]), cache_key(&["a", "bc"]));
        assert_eq!(cache_key(&["x"]).len(), 64);
    }

    #[test]
    fn concurrent_puts_leave_one_valid_file() {
        let root = scratch("concurrent");
        let c = Cache::open(&root).unwrap();
        let k = cache_key(&["same"]);
        let payload = vec![b'x'; 1 << 16];
        std::thread::scope(|s| {
            for _ in 0..8 {
                s.spawn(|| c.put(&k, &payload).unwrap());
            }
        });
        assert_eq!(c.get(&k).unwrap(), payload);
        let files: Vec<_> = fs::read_dir(root.join(&k[..2])).unwrap().collect();
        assert_eq!(files.len(), 1);
    }

    #[test]
    fn unusable_directory_degrades() {
        let file = scratch("file");
        fs::write(&file, b"not a directory").unwrap();
        assert!(Cache::open(&file.join("sub")).is_none());
    }
}
