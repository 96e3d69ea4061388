//! Single-file JSON cache of chain counts keyed by `"n:mode"`.
//!
//! Problems reading or writing the file never fail a run; they are reported
//! as warnings and the counts are recomputed.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use u6n_core::{ChainCounts, ChainCountsJson, LatticeMode};

pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, ChainCountsJson>,
    dirty: bool,
    warnings: Vec<String>,
}

pub fn key(n: u64, mode: LatticeMode) -> String {
    format!("{n}:{mode}")
}

impl Cache {
    /// Loads the cache; a missing file is an empty cache, a corrupt one is
    /// dropped with a warning.
    pub fn open(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        let mut warnings = Vec::new();
        let entries = match fs::read_to_string(&path) {
            Ok(text) => match serde_json::from_str(&text) {
                Ok(entries) => entries,
                Err(e) => {
                    warnings.push(format!(
                        "ignoring corrupt cache {}: {e}; it will be rebuilt",
                        path.display()
                    ));
                    BTreeMap::new()
                }
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => {
                warnings.push(format!("cannot read cache {}: {e}", path.display()));
                BTreeMap::new()
            }
        };
        // a corrupt file gets rewritten on the next flush even without new entries
        let dirty = !warnings.is_empty();
        Cache {
            path,
            entries,
            dirty,
            warnings,
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn lookup(&mut self, n: u64, mode: LatticeMode) -> Option<ChainCounts> {
        let k = key(n, mode);
        let json = self.entries.get(&k)?.clone();
        if json.n != n || json.mode != mode {
            self.warnings.push(format!("cache entry {k} has a mismatched key; recomputing"));
            return None;
        }
        match ChainCounts::try_from(json) {
            Ok(counts) => Some(counts),
            Err(e) => {
                self.warnings.push(format!("cache entry {k} is invalid ({e}); recomputing"));
                None
            }
        }
    }

    pub fn store(&mut self, counts: &ChainCounts) {
        self.entries.insert(key(counts.n, counts.mode), counts.to_json());
        self.dirty = true;
    }

    /// Looks `(n, mode)` up, computing and storing it on a miss.
    pub fn get_or_compute(
        &mut self,
        n: u64,
        mode: LatticeMode,
        compute: impl FnOnce() -> ChainCounts,
    ) -> ChainCounts {
        if let Some(hit) = self.lookup(n, mode) {
            return hit;
        }
        let counts = compute();
        self.store(&counts);
        counts
    }

    /// Writes the cache back if it changed.
    pub fn flush(&mut self) {
        if !self.dirty {
            return;
        }
        let result = serde_json::to_string_pretty(&self.entries)
            .map_err(io::Error::other)
            .and_then(|text| fs::write(&self.path, text + "\n"));
        match result {
            Ok(()) => self.dirty = false,
            Err(e) => self
                .warnings
                .push(format!("cannot write cache {}: {e}", self.path.display())),
        }
    }

    pub fn take_warnings(&mut self) -> Vec<String> {
        std::mem::take(&mut self.warnings)
    }
}
