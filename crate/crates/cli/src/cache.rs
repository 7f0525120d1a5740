//! On-disk cache of character tables keyed by a hash of the group.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use anyhow::Context;
use polyrep::chartab::character_table;
use polyrep::fingroup::fingerprint;
use polyrep::{CharacterTable, FiniteGroup};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "POLYREP_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".polyrep-cache";

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub repaired: usize,
}

pub struct TableCache {
    dir: Option<PathBuf>,
    hits: AtomicUsize,
    misses: AtomicUsize,
    repaired: AtomicUsize,
}

/// Flag beats environment beats the default.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

/// Hex SHA-256 over the fingerprint and the generator multiplication
/// tables, which pin the element numbering the table refers to.
pub fn group_key(g: &FiniteGroup) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(&fingerprint(g)).expect("fingerprint serializes"));
    for k in 0..g.generators().len() {
        h.update(b"|");
        for &x in g.right_action(k) {
            h.update(x.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

impl TableCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        TableCache { dir, hits: AtomicUsize::new(0), misses: AtomicUsize::new(0), repaired: AtomicUsize::new(0) }
    }

    pub fn disabled() -> Self {
        Self::new(None)
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            repaired: self.repaired.load(Ordering::Relaxed),
        }
    }

    pub fn path_for(&self, g: &FiniteGroup) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", group_key(g))))
    }

    pub fn table(&self, g: &FiniteGroup) -> polyrep::Result<CharacterTable> {
        let Some(path) = self.path_for(g) else {
            return character_table(g);
        };
        if let Ok(bytes) = fs::read(&path) {
            match load(&bytes, g) {
                Ok(t) => {
                    self.hits.fetch_add(1, Ordering::Relaxed);
                    return Ok(t);
                }
                Err(e) => {
                    log::warn!("cache entry {} is unusable ({e:#}); recomputing", path.display());
                    self.repaired.fetch_add(1, Ordering::Relaxed);
                }
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let t = character_table(g)?;
        if let Err(e) = store(&path, &t) {
            log::warn!("could not write cache entry {}: {e:#}", path.display());
        }
        Ok(t)
    }
}

fn load(bytes: &[u8], g: &FiniteGroup) -> anyhow::Result<CharacterTable> {
    let t: CharacterTable = serde_json::from_slice(bytes).context("parse")?;
    anyhow::ensure!(t.matches_group(g), "class data does not match the group");
    t.validate().context("validation")?;
    let sorted = t.irreducibles.windows(2).skip(1).all(|w| (w[0].degree(), &w[0].values) <= (w[1].degree(), &w[1].values));
    anyhow::ensure!(t.irreducibles[0].values.iter().all(|v| v.is_one()) && sorted, "irreducibles out of order");
    Ok(t)
}

/// Write-temp-then-rename, so readers never see a partial file.
fn store(path: &Path, t: &CharacterTable) -> anyhow::Result<()> {
    let dir = path.parent().context("cache path has a parent")?;
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(&serde_json::to_vec(t)?)?;
    tmp.flush()?;
    tmp.persist(path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyrep::constructions::build_group;

    #[test]
    fn hit_after_miss_and_repair() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(Some(dir.path().to_path_buf()));
        let g = build_group("S4").unwrap();
        let cold = cache.table(&g).unwrap();
        let warm = cache.table(&g).unwrap();
        assert_eq!(cold, warm);
        assert_eq!(cache.stats(), CacheStats { hits: 1, misses: 1, repaired: 0 });

        let path = cache.path_for(&g).unwrap();
        fs::write(&path, b"{ not json").unwrap();
        assert_eq!(cache.table(&g).unwrap(), cold);
        assert_eq!(cache.stats().repaired, 1);
        assert_eq!(cache.table(&g).unwrap(), cold);
        assert_eq!(cache.stats().hits, 2);
    }

    #[test]
    fn tampered_entry_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(Some(dir.path().to_path_buf()));
        let g = build_group("A4").unwrap();
        let t = cache.table(&g).unwrap();
        let mut bad = t.clone();
        bad.irreducibles.swap(1, 2);
        bad.irreducibles[3].values[1] = bad.irreducibles[3].values[0].clone();
        fs::write(cache.path_for(&g).unwrap(), serde_json::to_vec(&bad).unwrap()).unwrap();
        assert_eq!(cache.table(&g).unwrap(), t);
        assert_eq!(cache.stats().repaired, 1);
    }

    #[test]
    fn keys_separate_groups_of_equal_order() {
        let a = build_group("~S4+").unwrap();
        let b = build_group("~S4-").unwrap();
        assert_ne!(group_key(&a), group_key(&b));
        assert_eq!(group_key(&a), group_key(&build_group("~S4+").unwrap()));
    }
}
