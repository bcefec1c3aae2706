//! Disk-backed cache of exact counts, keyed by what was counted. Entries are
//! append-only decimal strings; a cache hit must equal recomputation, which
//! `verify_sample` spot-checks.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact::Int;
use crate::{Error, Result};

/// Canonical cache key: a count kind plus its parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CacheKey {
    /// `e(P_n, t)`.
    Dilate { n: u32, t: u32 },
    /// Interior count of `t * P_n`.
    Interior { n: u32, t: u32 },
    /// Zero-forced face count.
    Face { n: u32, t: u32, zeros: Vec<(u32, u32)> },
}

impl CacheKey {
    pub fn canonical(&self) -> String {
        match self {
            CacheKey::Dilate { n, t } => format!("e/n={n}/t={t}"),
            CacheKey::Interior { n, t } => format!("interior/n={n}/t={t}"),
            CacheKey::Face { n, t, zeros } => {
                let mut zeros = zeros.clone();
                zeros.sort_unstable();
                let cells: Vec<String> =
                    zeros.iter().map(|(r, s)| format!("({r},{s})")).collect();
                format!("face/n={n}/t={t}/zeros={}", cells.join("+"))
            }
        }
    }

    pub fn parse(text: &str) -> Result<CacheKey> {
        let bad = || Error::InvalidInput(format!("malformed cache key `{text}`"));
        let mut parts = text.split('/');
        let kind = parts.next().ok_or_else(bad)?;
        let field = |part: Option<&str>, prefix: &str| -> Result<u32> {
            part.and_then(|p| p.strip_prefix(prefix))
                .and_then(|v| v.parse::<u32>().ok())
                .ok_or_else(bad)
        };
        match kind {
            "e" | "interior" => {
                let n = field(parts.next(), "n=")?;
                let t = field(parts.next(), "t=")?;
                if parts.next().is_some() {
                    return Err(bad());
                }
                Ok(if kind == "e" {
                    CacheKey::Dilate { n, t }
                } else {
                    CacheKey::Interior { n, t }
                })
            }
            "face" => {
                let n = field(parts.next(), "n=")?;
                let t = field(parts.next(), "t=")?;
                let zeros_part = parts.next().and_then(|p| p.strip_prefix("zeros=")).ok_or_else(bad)?;
                let mut zeros = Vec::new();
                if !zeros_part.is_empty() {
                    for cell in zeros_part.split('+') {
                        let inner = cell
                            .strip_prefix('(')
                            .and_then(|c| c.strip_suffix(')'))
                            .ok_or_else(bad)?;
                        let (r, s) = inner.split_once(',').ok_or_else(bad)?;
                        zeros.push((
                            r.parse().map_err(|_| bad())?,
                            s.parse().map_err(|_| bad())?,
                        ));
                    }
                }
                Ok(CacheKey::Face { n, t, zeros })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, String>,
}

/// Append-only result cache. IO trouble downgrades to compute-only with a
/// warning instead of failing the run.
#[derive(Debug)]
pub struct ResultCache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, String>,
    dirty: bool,
    degraded: bool,
}

impl ResultCache {
    /// In-memory cache that never touches disk.
    pub fn ephemeral() -> Self {
        ResultCache { path: None, entries: BTreeMap::new(), dirty: false, degraded: false }
    }

    pub fn open(path: &Path) -> Self {
        match Self::try_open(path) {
            Ok(cache) => cache,
            Err(err) => {
                eprintln!(
                    "warning: cache at {} unusable ({err}); continuing without persistence",
                    path.display()
                );
                ResultCache {
                    path: None,
                    entries: BTreeMap::new(),
                    dirty: false,
                    degraded: true,
                }
            }
        }
    }

    fn try_open(path: &Path) -> Result<Self> {
        let entries = if path.exists() {
            let text = std::fs::read_to_string(path)?;
            let file: CacheFile = serde_json::from_str(&text)?;
            file.entries
        } else {
            // The file will be created on save; its directory must exist.
            let parent = path.parent().filter(|p| !p.as_os_str().is_empty());
            if let Some(dir) = parent {
                if !dir.is_dir() {
                    return Err(Error::InvalidInput(format!(
                        "cache directory {} does not exist",
                        dir.display()
                    )));
                }
            }
            BTreeMap::new()
        };
        Ok(ResultCache { path: Some(path.to_path_buf()), entries, dirty: false, degraded: false })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degraded(&self) -> bool {
        self.degraded
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }

    pub fn get(&self, key: &CacheKey) -> Option<Result<Int>> {
        self.entries.get(&key.canonical()).map(|text| {
            Int::from_str(text)
                .map_err(|_| Error::InvalidInput(format!("corrupt cache value `{text}`")))
        })
    }

    /// Returns the cached value or computes, stores and returns it.
    pub fn get_or_compute(
        &mut self,
        key: &CacheKey,
        compute: impl FnOnce() -> Result<Int>,
    ) -> Result<Int> {
        if let Some(hit) = self.get(key) {
            return hit;
        }
        let value = compute()?;
        self.entries.insert(key.canonical(), value.to_string());
        self.dirty = true;
        Ok(value)
    }

    /// Overwrites an entry; only used by tests to poison the cache.
    pub fn insert_raw(&mut self, key: String, value: String) {
        self.entries.insert(key, value);
        self.dirty = true;
    }

    /// Persists the cache atomically (write temp file, rename).
    pub fn save(&mut self) -> Result<()> {
        let Some(path) = self.path.clone() else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        let file = CacheFile { version: 1, entries: self.entries.clone() };
        let text = serde_json::to_string_pretty(&file)?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, &path)?;
        self.dirty = false;
        Ok(())
    }

    /// Recomputes a deterministic sample of entries (at least one, roughly
    /// `percent` of the cache) and reports mismatches.
    pub fn verify_sample(
        &self,
        percent: u32,
        seed: u64,
        recompute: impl Fn(&CacheKey) -> Result<Int>,
    ) -> Result<Vec<String>> {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let keys: Vec<&String> = self.entries.keys().collect();
        if keys.is_empty() {
            return Ok(Vec::new());
        }
        let sample_size = (keys.len() as u64 * percent as u64).div_ceil(100).max(1) as usize;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut shuffled = keys;
        shuffled.shuffle(&mut rng);
        let mut mismatches = Vec::new();
        for key_text in shuffled.into_iter().take(sample_size) {
            let key = CacheKey::parse(key_text)?;
            let fresh = recompute(&key)?;
            if fresh.to_string() != self.entries[key_text] {
                mismatches.push(format!(
                    "{key_text}: cached {} != recomputed {fresh}",
                    self.entries[key_text]
                ));
            }
        }
        Ok(mismatches)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn key_round_trip() {
        let keys = vec![
            CacheKey::Dilate { n: 8, t: 3 },
            CacheKey::Interior { n: 4, t: 6 },
            CacheKey::Face { n: 5, t: 3, zeros: vec![(4, 2)] },
            CacheKey::Face { n: 5, t: 3, zeros: vec![(4, 2), (2, 1)] },
        ];
        for key in keys {
            let text = key.canonical();
            let parsed = CacheKey::parse(&text).unwrap();
            // Canonical form sorts the zero set.
            assert_eq!(parsed.canonical(), text);
        }
        assert!(CacheKey::parse("e/n=x/t=1").is_err());
        assert!(CacheKey::parse("nope/n=1/t=1").is_err());
    }

    #[test]
    fn compute_once_semantics() {
        let mut cache = ResultCache::ephemeral();
        let key = CacheKey::Dilate { n: 3, t: 2 };
        let mut calls = 0;
        let v1 = cache
            .get_or_compute(&key, || {
                calls += 1;
                Ok(int(10))
            })
            .unwrap();
        let v2 = cache.get_or_compute(&key, || unreachable!("cache hit expected")).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(calls, 1);
    }

    #[test]
    fn poisoned_entry_detected() {
        let mut cache = ResultCache::ephemeral();
        let key = CacheKey::Dilate { n: 3, t: 1 };
        cache.insert_raw(key.canonical(), "999".into());
        let mismatches = cache
            .verify_sample(100, 42, |k| match k {
                CacheKey::Dilate { n, t } => crate::transfer::evaluate_e(*n, *t, false),
                _ => unreachable!(),
            })
            .unwrap();
        assert_eq!(mismatches.len(), 1);
        assert!(mismatches[0].contains("e/n=3/t=1"));
    }

    #[test]
    fn unusable_path_degrades() {
        let cache = ResultCache::open(Path::new("/dev/null/not-a-dir/cache.json"));
        assert!(cache.degraded());
    }
}
