//! On-disk cache of search results.
//!
//! Each query gets its own directory holding `meta.json` (the result without
//! its graph list) and `minimal.g6` (one canonical key per line, sorted).
//! Query names include the crate version, so a new build never reads results
//! written by an old one. A hit is trusted only after one randomly chosen
//! member is re-checked for saturation.

use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::canon::CanonicalKey;
use crate::enumerate::{enumerate_minimal_saturated, find_saturation_number_with, SearchOptions, SearchResult};
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;
use crate::saturation::saturated;

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "SATLAB_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Meta {
    query: String,
    version: String,
    n: usize,
    pattern: PatternSpec,
    /// Edge count of every listed graph.
    edges: usize,
    classes: usize,
    scanned: Option<u64>,
    pruned: Option<u64>,
    pruning_enabled: bool,
}

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Cache {
        Cache { root: root.into() }
    }

    /// `$SATLAB_CACHE`, or `satlab-cache` under the system temp directory.
    pub fn from_env() -> Cache {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Cache::new(dir),
            _ => Cache::new(std::env::temp_dir().join("satlab-cache")),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn sat_query(n: usize, p: &PatternSpec, prune: bool) -> String {
        format!("sat-n{n}-{p}-prune{}-v{CODE_VERSION}", u8::from(prune))
    }

    fn minimal_query(n: usize, p: &PatternSpec, m: usize) -> String {
        format!("min-n{n}-{p}-m{m}-v{CODE_VERSION}")
    }

    /// [`find_saturation_number_with`] through the cache. The flag reports
    /// whether the result came from disk.
    pub fn find_saturation_number(&self, n: usize, p: &PatternSpec, options: SearchOptions) -> Result<(SearchResult, bool)> {
        let query = Cache::sat_query(n, p, options.use_pruning);
        if let Some((meta, keys)) = self.load(&query, n, p)? {
            if let (Some(scanned), Some(pruned)) = (meta.scanned, meta.pruned) {
                let result = SearchResult {
                    n,
                    pattern: *p,
                    sat_number: meta.edges,
                    minimal_graphs: keys,
                    scanned,
                    pruned,
                    pruning_enabled: meta.pruning_enabled,
                };
                return Ok((result, true));
            }
        }
        let result = find_saturation_number_with(n, p, options)?;
        let meta = Meta {
            query: query.clone(),
            version: CODE_VERSION.into(),
            n,
            pattern: *p,
            edges: result.sat_number,
            classes: result.minimal_graphs.len(),
            scanned: Some(result.scanned),
            pruned: Some(result.pruned),
            pruning_enabled: result.pruning_enabled,
        };
        self.store(&query, &meta, &result.minimal_graphs)?;
        Ok((result, false))
    }

    /// [`enumerate_minimal_saturated`] through the cache.
    pub fn enumerate_minimal_saturated(&self, n: usize, p: &PatternSpec, m: usize) -> Result<(Vec<CanonicalKey>, bool)> {
        let query = Cache::minimal_query(n, p, m);
        if let Some((_, keys)) = self.load(&query, n, p)? {
            return Ok((keys, true));
        }
        let keys = enumerate_minimal_saturated(n, p, m)?;
        let meta = Meta {
            query: query.clone(),
            version: CODE_VERSION.into(),
            n,
            pattern: *p,
            edges: m,
            classes: keys.len(),
            scanned: None,
            pruned: None,
            pruning_enabled: false,
        };
        self.store(&query, &meta, &keys)?;
        Ok((keys, false))
    }

    /// Reads a cached entry; anything inconsistent counts as a miss.
    fn load(&self, query: &str, n: usize, p: &PatternSpec) -> Result<Option<(Meta, Vec<CanonicalKey>)>> {
        let dir = self.root.join(query);
        let (Ok(meta_text), Ok(lines)) = (
            fs::read_to_string(dir.join("meta.json")),
            fs::read_to_string(dir.join("minimal.g6")),
        ) else {
            return Ok(None);
        };
        let Ok(meta) = serde_json::from_str::<Meta>(&meta_text) else {
            return Ok(None);
        };
        if meta.query != query || meta.version != CODE_VERSION || meta.n != n || meta.pattern != *p {
            return Ok(None);
        }
        let Ok(keys) = lines.lines().map(CanonicalKey::parse).collect::<Result<Vec<_>>>() else {
            return Ok(None);
        };
        if keys.len() != meta.classes || !keys.windows(2).all(|w| w[0] < w[1]) {
            return Ok(None);
        }
        if let Some(key) = keys.choose(&mut rand::thread_rng()) {
            let g = key.graph()?;
            if g.order() != n || g.edge_count() != meta.edges || !saturated(&g, p)? {
                return Ok(None);
            }
        }
        Ok(Some((meta, keys)))
    }

    fn store(&self, query: &str, meta: &Meta, keys: &[CanonicalKey]) -> Result<()> {
        let dir = self.root.join(query);
        let staging = self.root.join(format!(".{query}.{}", std::process::id()));
        fs::create_dir_all(&staging)?;
        let meta_text = serde_json::to_string_pretty(meta).map_err(|e| Error::Io(e.to_string()))?;
        fs::write(staging.join("meta.json"), meta_text + "\n")?;
        let body: String = keys.iter().map(|k| format!("{k}\n")).collect();
        fs::write(staging.join("minimal.g6"), body)?;
        if dir.exists() {
            fs::remove_dir_all(&dir)?;
        }
        fs::rename(&staging, &dir)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_after_store_and_corruption_is_a_miss() {
        let tmp = tempfile::tempdir().unwrap();
        let cache = Cache::new(tmp.path());
        let p: PatternSpec = "K2vP3".parse().unwrap();
        let (first, hit) = cache.find_saturation_number(6, &p, SearchOptions::default()).unwrap();
        assert!(!hit);
        let (second, hit) = cache.find_saturation_number(6, &p, SearchOptions::default()).unwrap();
        assert!(hit);
        assert_eq!(first, second);

        let dir = tmp.path().join(Cache::sat_query(6, &p, false));
        let listing = fs::read_to_string(dir.join("minimal.g6")).unwrap();
        assert_eq!(listing.lines().count(), first.minimal_graphs.len());
        fs::write(dir.join("minimal.g6"), "E???\n").unwrap();
        let (third, hit) = cache.find_saturation_number(6, &p, SearchOptions::default()).unwrap();
        assert!(!hit);
        assert_eq!(third, first);
    }

    #[test]
    fn minimal_queries_are_cached() {
        let tmp = tempfile::tempdir().unwrap();
        let cache = Cache::new(tmp.path());
        let p: PatternSpec = "P4".parse().unwrap();
        let (keys, hit) = cache.enumerate_minimal_saturated(7, &p, 5).unwrap();
        assert!(!hit);
        assert_eq!(keys.len(), 2);
        assert_eq!(cache.enumerate_minimal_saturated(7, &p, 5).unwrap(), (keys, true));
    }
}
