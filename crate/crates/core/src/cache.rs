//! On-disk cache of Weyl group tables.
//!
//! One JSON file per root system holds the canonical reduced words and the
//! Bruhat rows. Files carry a schema version; unreadable, stale or
//! inconsistent files are replaced. Writes go to a temporary file in the same
//! directory and are renamed into place.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::rootdata::RootSystem;
use crate::verify::{GroupSource, VerifyError};
use crate::weyl::{WeylError, WeylGroup};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CachedGroup {
    schema: u32,
    system: String,
    words: Vec<Vec<usize>>,
    bruhat: Vec<u64>,
}

/// How a group was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// The file existed but was discarded for the given reason.
    Replaced(String),
}

#[derive(Debug)]
pub struct GroupCache {
    dir: PathBuf,
    loaded: HashMap<String, Arc<WeylGroup>>,
    /// Problems met while reading or writing; never fatal.
    pub warnings: Vec<String>,
}

impl GroupCache {
    pub fn new(dir: impl Into<PathBuf>) -> GroupCache {
        GroupCache { dir: dir.into(), loaded: HashMap::new(), warnings: Vec::new() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, rs: &RootSystem) -> PathBuf {
        self.dir.join(format!("weyl-{rs}-v{SCHEMA_VERSION}.json"))
    }

    fn read(&self, rs: &RootSystem, path: &Path) -> Result<WeylGroup, String> {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let cached: CachedGroup = serde_json::from_str(&text).map_err(|e| format!("unreadable: {e}"))?;
        if cached.schema != SCHEMA_VERSION {
            return Err(format!("schema {} != {SCHEMA_VERSION}", cached.schema));
        }
        if cached.system != rs.to_string() {
            return Err(format!("holds {} instead of {rs}", cached.system));
        }
        WeylGroup::from_words(rs.clone(), &cached.words, Some(cached.bruhat)).map_err(|e| e.to_string())
    }

    fn write(&self, g: &WeylGroup, path: &Path) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let cached = CachedGroup {
            schema: SCHEMA_VERSION,
            system: g.root_system().to_string(),
            words: g.elements().map(|w| g.word(w)).collect(),
            bruhat: g.bruhat_rows().to_vec(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &cached)?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Loads the group from disk, or builds and stores it.
    pub fn load_or_build(&mut self, rs: &RootSystem) -> Result<(Arc<WeylGroup>, CacheOutcome), WeylError> {
        if let Some(g) = self.loaded.get(&rs.to_string()) {
            return Ok((g.clone(), CacheOutcome::Hit));
        }
        let path = self.path_for(rs);
        let mut outcome = CacheOutcome::Miss;
        if path.exists() {
            match self.read(rs, &path) {
                Ok(g) => {
                    let g = Arc::new(g);
                    self.loaded.insert(rs.to_string(), g.clone());
                    return Ok((g, CacheOutcome::Hit));
                }
                Err(why) => {
                    self.warnings.push(format!("discarding cache file {}: {why}", path.display()));
                    outcome = CacheOutcome::Replaced(why);
                }
            }
        }
        let g = Arc::new(WeylGroup::new(rs.clone())?);
        if let Err(e) = self.write(&g, &path) {
            self.warnings.push(format!("could not write cache file {}: {e}", path.display()));
        }
        self.loaded.insert(rs.to_string(), g.clone());
        Ok((g, outcome))
    }

    /// Removes cache files of every schema version; returns how many.
    pub fn clear(&self) -> io::Result<usize> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e),
        };
        let mut n = 0;
        for entry in entries {
            let path = entry?.path();
            let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("");
            if name.starts_with("weyl-") && name.ends_with(".json") {
                fs::remove_file(&path)?;
                n += 1;
            }
        }
        Ok(n)
    }
}

impl GroupSource for GroupCache {
    fn group(&mut self, rs: &RootSystem) -> Result<Arc<WeylGroup>, VerifyError> {
        Ok(self.load_or_build(rs)?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miss_then_hit_gives_identical_tables() {
        let dir = tempfile::tempdir().unwrap();
        let rs = RootSystem::parse("B3").unwrap();
        let (g, first) = GroupCache::new(dir.path()).load_or_build(&rs).unwrap();
        assert_eq!(first, CacheOutcome::Miss);
        let (h, second) = GroupCache::new(dir.path()).load_or_build(&rs).unwrap();
        assert_eq!(second, CacheOutcome::Hit);
        assert_eq!(g.bruhat_rows(), h.bruhat_rows());
        assert!(g.elements().all(|w| g.elt(w) == h.elt(w) && g.word(w) == h.word(w)));
    }

    #[test]
    fn corrupt_and_stale_files_are_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let rs = RootSystem::parse("A2").unwrap();
        let path = dir.path().join(format!("weyl-A2-v{SCHEMA_VERSION}.json"));
        fs::write(&path, "{ not json").unwrap();
        let mut cache = GroupCache::new(dir.path());
        let (_, outcome) = cache.load_or_build(&rs).unwrap();
        assert!(matches!(outcome, CacheOutcome::Replaced(_)));
        assert_eq!(cache.warnings.len(), 1);
        let text = fs::read_to_string(&path).unwrap().replace("\"schema\":1", "\"schema\":0");
        fs::write(&path, text).unwrap();
        let (_, outcome) = GroupCache::new(dir.path()).load_or_build(&rs).unwrap();
        assert!(matches!(outcome, CacheOutcome::Replaced(ref why) if why.contains("schema")));
        assert_eq!(GroupCache::new(dir.path()).load_or_build(&rs).unwrap().1, CacheOutcome::Hit);
    }

    #[test]
    fn clear_removes_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut cache = GroupCache::new(dir.path());
        for s in ["A1", "G2"] {
            cache.load_or_build(&RootSystem::parse(s).unwrap()).unwrap();
        }
        assert_eq!(cache.clear().unwrap(), 2);
        assert_eq!(cache.clear().unwrap(), 0);
        assert_eq!(GroupCache::new(dir.path().join("missing")).clear().unwrap(), 0);
    }
}
