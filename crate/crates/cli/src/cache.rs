//! Content-addressed result cache.
//!
//! Every cacheable command serializes its result to a canonical JSON
//! payload; the payload is stored in a file named by the SHA-256 of
//! `(operation, canonical arguments, convention-constants version)`.  The
//! cache is purely an optimization: a hit must deserialize as the expected
//! payload type (anything else — corruption, an older layout — is treated
//! as a miss and overwritten), a miss computes and stores, and any I/O
//! problem simply falls back to computing.  Results are therefore identical
//! with the cache on, off, cold, or warm.
//!
//! Location: the `PFWIN_CACHE` environment variable names the directory;
//! the values `off`, `none`, `0`, or an empty string disable caching;
//! unset means the user cache directory (`~/.cache/pfwin` on Linux).

use std::fs;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use pfwin_core::Error;

/// Resolved cache configuration for one process run.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Resolve from `PFWIN_CACHE` and the platform cache directory.
    pub fn from_env() -> Cache {
        let dir = match std::env::var("PFWIN_CACHE") {
            Ok(value) => {
                let v = value.trim();
                if v.is_empty() || v.eq_ignore_ascii_case("off")
                    || v.eq_ignore_ascii_case("none") || v == "0"
                {
                    None
                } else {
                    Some(PathBuf::from(v))
                }
            }
            Err(_) => dirs::cache_dir().map(|d| d.join("pfwin")),
        };
        Cache { dir }
    }

    /// A cache that never stores anything (for tests).
    #[cfg(test)]
    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    #[cfg(test)]
    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn path_for(&self, operation: &str, args: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut hasher = Sha256::new();
        hasher.update(operation.as_bytes());
        hasher.update([0x1f]);
        hasher.update(args.as_bytes());
        hasher.update([0x1f]);
        hasher.update(pfwin_core::CONVENTION_VERSION.as_bytes());
        let digest = hasher.finalize();
        let mut name = String::with_capacity(69);
        for byte in digest {
            name.push_str(&format!("{byte:02x}"));
        }
        name.push_str(".json");
        Some(dir.join(name))
    }

    /// Return the value for `(operation, args)`, computing and storing it
    /// on a miss.  A stored entry counts as a hit only if it deserializes
    /// as `T`; cache read/write failures degrade to plain computation.
    pub fn get_or_compute<T>(
        &self,
        operation: &str,
        args: &str,
        compute: impl FnOnce() -> Result<T, Error>,
    ) -> Result<T, Error>
    where
        T: serde::Serialize + serde::de::DeserializeOwned,
    {
        let path = self.path_for(operation, args);
        if let Some(path) = &path {
            if let Ok(text) = fs::read_to_string(path) {
                if let Ok(value) = serde_json::from_str::<T>(&text) {
                    return Ok(value);
                }
            }
        }
        let value = compute()?;
        if let Some(path) = &path {
            if let Ok(payload) = serde_json::to_string(&value) {
                let _ = store(path, &payload);
            }
        }
        Ok(value)
    }
}

/// Write atomically enough for a cache: temp file in the same directory,
/// then rename over the target.
fn store(path: &PathBuf, payload: &str) -> std::io::Result<()> {
    let dir = path.parent().expect("cache paths have a parent directory");
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, payload)?;
    fs::rename(&tmp, path)
}
