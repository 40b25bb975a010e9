//! On-disk cache of subgroup lattices, one JSON file per group hash.
//!
//! Files are written to a temporary name and renamed into place, so
//! concurrent writers never expose a partial file. Unreadable files are
//! skipped with a warning; files from another format version are ignored
//! and left alone.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::warn;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::Result;
use crate::group::{Group, GroupHash};
use crate::lattice::{Subgroup, SubgroupLattice};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "CDLAT_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".cdlat-cache";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    group_hash: String,
    order: usize,
    subgroups: Vec<String>,
    classes: Vec<Vec<usize>>,
}

/// Only the version field, so files of any version can be recognized.
#[derive(Deserialize)]
struct VersionProbe {
    version: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub entries: usize,
    pub bytes: u64,
    /// Files that are unreadable or carry another version.
    pub stale: usize,
}

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

enum Probe {
    Current,
    OtherVersion,
    Corrupt,
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> LatticeCache {
        LatticeCache { dir: dir.into() }
    }

    /// `explicit`, else `$CDLAT_CACHE`, else `.cdlat-cache`.
    pub fn resolve(explicit: Option<&Path>) -> LatticeCache {
        let dir = match explicit {
            Some(p) => p.to_path_buf(),
            None => std::env::var_os(CACHE_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR)),
        };
        LatticeCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, hash: &GroupHash) -> PathBuf {
        self.dir.join(format!("{}.json", hash.to_hex()))
    }

    /// The cached lattice of `g`, if a valid current-version entry exists.
    pub fn get(&self, g: &Group) -> Option<SubgroupLattice> {
        let path = self.path_for(&g.hash());
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                warn!("ignoring unreadable cache file {}: {e}", path.display());
                return None;
            }
        };
        match probe(&text) {
            Probe::Current => {}
            Probe::OtherVersion => return None,
            Probe::Corrupt => {
                warn!("ignoring corrupt cache file {}", path.display());
                return None;
            }
        }
        match decode(g, &text) {
            Ok(l) => Some(l),
            Err(msg) => {
                warn!("ignoring corrupt cache file {}: {msg}", path.display());
                None
            }
        }
    }

    pub fn put(&self, g: &Group, lattice: &SubgroupLattice) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            version: CACHE_VERSION,
            group_hash: lattice.parent().to_hex(),
            order: g.order(),
            subgroups: lattice
                .subgroups()
                .iter()
                .map(|s| hex::encode(s.members().to_bytes()))
                .collect(),
            classes: lattice.classes().to_vec(),
        };
        let text = serde_json::to_string(&file).map_err(|e| crate::Error::Io(e.to_string()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path_for(&lattice.parent()))
            .map_err(|e| crate::Error::Io(e.to_string()))?;
        Ok(())
    }

    fn entries(&self) -> Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e.into()),
        };
        for entry in rd {
            let path = entry?.path();
            if path.extension().is_some_and(|x| x == "json") && path.is_file() {
                out.push(path);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let mut stats = CacheStats::default();
        for path in self.entries()? {
            stats.entries += 1;
            stats.bytes += fs::metadata(&path)?.len();
            let ok = fs::read_to_string(&path).map(|t| matches!(probe(&t), Probe::Current));
            if !matches!(ok, Ok(true)) {
                stats.stale += 1;
            }
        }
        Ok(stats)
    }

    /// Removes unreadable and other-version files; returns how many.
    pub fn gc(&self) -> Result<usize> {
        let mut removed = 0;
        for path in self.entries()? {
            let current = fs::read_to_string(&path).map(|t| matches!(probe(&t), Probe::Current));
            if !matches!(current, Ok(true)) {
                fs::remove_file(&path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

fn probe(text: &str) -> Probe {
    match serde_json::from_str::<VersionProbe>(text) {
        Ok(v) if v.version == CACHE_VERSION => Probe::Current,
        Ok(_) => Probe::OtherVersion,
        Err(_) => Probe::Corrupt,
    }
}

fn decode(g: &Group, text: &str) -> std::result::Result<SubgroupLattice, String> {
    let file: CacheFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if file.group_hash != g.hash().to_hex() || file.order != g.order() {
        return Err("entry belongs to a different group".into());
    }
    let subgroups = file
        .subgroups
        .iter()
        .map(|h| {
            let bytes = hex::decode(h).map_err(|e| e.to_string())?;
            let bits = Bitset::from_bytes(g.order(), &bytes).ok_or("bad bitset length")?;
            Subgroup::from_members(g, bits).map_err(|e| e.to_string())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    SubgroupLattice::from_parts(g, subgroups, file.classes).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::dihedral;
    use crate::lattice::all_subgroups;
    use crate::Limits;

    #[test]
    fn roundtrip_and_version_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LatticeCache::new(dir.path());
        let g = dihedral(12).unwrap();
        assert!(cache.get(&g).is_none());
        let l = all_subgroups(&g, &Limits::default()).unwrap();
        cache.put(&g, &l).unwrap();
        assert_eq!(cache.get(&g).unwrap(), l);

        let path = cache.path_for(&g.hash());
        let text = fs::read_to_string(&path).unwrap().replace("\"version\":1", "\"version\":99");
        fs::write(&path, &text).unwrap();
        assert!(cache.get(&g).is_none());
        assert_eq!(fs::read_to_string(&path).unwrap(), text);
        assert_eq!(cache.stats().unwrap().stale, 1);
        assert_eq!(cache.gc().unwrap(), 1);
        assert!(!path.exists());
    }

    #[test]
    fn corrupt_files_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LatticeCache::new(dir.path());
        let g = dihedral(8).unwrap();
        fs::write(cache.path_for(&g.hash()), "{not json").unwrap();
        assert!(cache.get(&g).is_none());
        // a well-formed file whose subgroups are not closed
        let l = all_subgroups(&g, &Limits::default()).unwrap();
        cache.put(&g, &l).unwrap();
        let path = cache.path_for(&g.hash());
        let text = fs::read_to_string(&path).unwrap();
        let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
        file["subgroups"][1] = serde_json::Value::String("06".into());
        fs::write(&path, file.to_string()).unwrap();
        assert!(cache.get(&g).is_none());
    }

    #[test]
    fn other_group_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LatticeCache::new(dir.path());
        let (g, h) = (dihedral(8).unwrap(), crate::families::dicyclic(8).unwrap());
        let l = all_subgroups(&g, &Limits::default()).unwrap();
        cache.put(&g, &l).unwrap();
        fs::copy(cache.path_for(&g.hash()), cache.path_for(&h.hash())).unwrap();
        assert!(cache.get(&h).is_none());
    }
}
