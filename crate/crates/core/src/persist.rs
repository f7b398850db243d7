//! On-disk form of the `W_{g,n}` tables.
//!
//! ```json
//! {"version": 1,
//!  "entries": {"1,1": {"digest": "...", "terms": [{"k": [1], "coeff": {"terms": [{"exp": -2, "num": "1", "den": "288"}]}}]}}}
//! ```
//!
//! Each entry carries the SHA-256 of its canonical `terms` serialization;
//! a mismatch on load is an internal consistency error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::render::{table_json, KeyedJson};
use crate::scalar::Scalar;
use crate::toprec::{StableW, WCache};

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "PAINLEVE_QCURVE_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub digest: String,
    pub terms: Vec<KeyedJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub entries: BTreeMap<String, EntryJson>,
}

fn digest(terms: &[KeyedJson]) -> Result<String> {
    let bytes = serde_json::to_vec(terms)?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

fn parse_key(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::Cache(format!("bad entry key {s:?}"));
    let (g, n) = s.split_once(',').ok_or_else(bad)?;
    Ok((g.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

pub fn default_cache_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn to_file<T: Scalar>(cache: &WCache<T>) -> Result<CacheFile> {
    let mut entries = BTreeMap::new();
    for ((g, n), w) in cache.snapshot() {
        let terms = table_json(w.terms())?;
        entries.insert(format!("{g},{n}"), EntryJson { digest: digest(&terms)?, terms });
    }
    Ok(CacheFile { version: FORMAT_VERSION, entries })
}

/// Writes every table in `cache` to `path`, replacing it atomically.
pub fn save<T: Scalar>(cache: &WCache<T>, path: &Path) -> Result<()> {
    let file = to_file(cache)?;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, &file)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Checks digests and table shapes, then inserts every entry into `cache`.
/// Returns the number of entries read.
pub fn load_into<T: Scalar>(file: &CacheFile, cache: &WCache<T>) -> Result<usize> {
    if file.version != FORMAT_VERSION {
        return Err(Error::Cache(format!("unsupported cache version {}", file.version)));
    }
    for (key, entry) in &file.entries {
        let (g, n) = parse_key(key)?;
        if digest(&entry.terms)? != entry.digest {
            return Err(Error::InternalConsistency(format!("cache entry W_{{{g},{n}}} fails its digest")));
        }
        let mut terms = BTreeMap::new();
        for t in &entry.terms {
            terms.insert(t.k.clone(), t.coeff.to_laurent::<T>()?.into());
        }
        cache.insert(StableW::new(g, n, terms)?)?;
    }
    Ok(file.entries.len())
}

/// Loads `path` into `cache`; a missing file loads nothing.
pub fn load<T: Scalar>(path: &Path, cache: &WCache<T>) -> Result<usize> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(e.into()),
    };
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    load_into(&file, cache)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toprec::compute_W;
    use num_rational::BigRational;

    #[test]
    fn round_trip_and_tamper() {
        let cache = WCache::<BigRational>::new();
        compute_W(1, 2, &cache).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.json");
        save(&cache, &path).unwrap();

        let warm = WCache::<BigRational>::new();
        assert_eq!(load(&path, &warm).unwrap(), cache.len());
        assert_eq!(warm.snapshot(), cache.snapshot());

        let text = std::fs::read_to_string(&path).unwrap().replace("\"288\"", "\"289\"");
        std::fs::write(&path, text).unwrap();
        let err = load(&path, &WCache::<BigRational>::new()).unwrap_err();
        assert!(matches!(err, Error::InternalConsistency(_)), "{err}");

        assert_eq!(load(&dir.path().join("absent.json"), &WCache::<BigRational>::new()).unwrap(), 0);
    }
}
