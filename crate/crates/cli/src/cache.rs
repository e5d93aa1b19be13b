//! On-disk cache of constructed groups.
//!
//! Entries are binary snapshots named by the SHA-256 of the canonical JSON of
//! their spec. Only groups small enough for a table snapshot are stored; a
//! missing, unreadable or stale entry is rebuilt silently.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use intensity_core::constructions::{build, BuildConfig, GroupSpec};
use intensity_core::group::snapshot::{Snapshot, MAX_TABLE_ORDER};
use intensity_core::group::GroupTable;

use crate::{CliError, Result};

pub const ENV_VAR: &str = "INTENSITY_LAB_CACHE_DIR";
const EXTENSION: &str = "igrp";

#[derive(Clone, Debug)]
pub struct GroupCache {
    dir: PathBuf,
}

impl GroupCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$INTENSITY_LAB_CACHE_DIR`, else `$HOME/.cache/intensity-lab`, else a
    /// directory under the system temp dir.
    pub fn from_env() -> Self {
        if let Some(dir) = std::env::var_os(ENV_VAR).filter(|d| !d.is_empty()) {
            return Self::new(dir);
        }
        match std::env::var_os("HOME").filter(|h| !h.is_empty()) {
            Some(home) => Self::new(Path::new(&home).join(".cache").join("intensity-lab")),
            None => Self::new(std::env::temp_dir().join("intensity-lab")),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(spec: &GroupSpec) -> Result<String> {
        let digest = Sha256::digest(spec.canonical_json()?.as_bytes());
        Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.{EXTENSION}"))
    }

    /// Load the group for `spec`, building and storing it on a miss.
    pub fn load_or_build(&self, spec: &GroupSpec, cfg: &BuildConfig) -> Result<(Arc<GroupTable>, bool)> {
        let path = self.path(&Self::key(spec)?);
        if let Some(g) = Self::load(&path, cfg) {
            return Ok((Arc::new(g), true));
        }
        let g = build(spec, cfg)?.group;
        if g.order() <= MAX_TABLE_ORDER {
            // A cache that cannot be written is only a missed optimization.
            let _ = self.store(&path, &g);
        }
        Ok((g, false))
    }

    fn load(path: &Path, cfg: &BuildConfig) -> Option<GroupTable> {
        let bytes = fs::read(path).ok()?;
        let snap = Snapshot::decode(&bytes).ok()?;
        if snap.order as u64 > cfg.closure.max_order {
            return None;
        }
        snap.into_group().ok()
    }

    fn store(&self, path: &Path, g: &GroupTable) -> Result<()> {
        let bytes = Snapshot::from_table(g)?.encode();
        let write_err = |source| CliError::Write { path: path.display().to_string(), source };
        fs::create_dir_all(&self.dir).map_err(write_err)?;
        // Write then rename so concurrent readers never see a partial file.
        let tmp = path.with_extension(format!("{EXTENSION}.{}.tmp", std::process::id()));
        fs::write(&tmp, bytes).map_err(write_err)?;
        fs::rename(&tmp, path).map_err(write_err)
    }

    /// Remove every cache entry; returns how many were deleted.
    pub fn clear(&self) -> Result<usize> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(source) => return Err(CliError::Read { path: self.dir.display().to_string(), source }),
        };
        let mut removed = 0;
        for entry in entries.flatten() {
            let path = entry.path();
            if path.extension().is_some_and(|e| e == EXTENSION) {
                fs::remove_file(&path)
                    .map_err(|source| CliError::Write { path: path.display().to_string(), source })?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_ignores_json_layout() {
        let a = GroupSpec::from_json(r#"{"kind":"abelian","p":3,"type":[1,2]}"#).unwrap();
        let b = GroupSpec::from_json(r#"{ "type": [1, 2], "p": 3, "kind": "abelian" }"#).unwrap();
        assert_eq!(GroupCache::key(&a).unwrap(), GroupCache::key(&b).unwrap());
        let c = GroupSpec::abelian(3, &[1, 1]);
        assert_ne!(GroupCache::key(&a).unwrap(), GroupCache::key(&c).unwrap());
    }

    #[test]
    fn hit_reproduces_group() {
        let dir = std::env::temp_dir().join(format!("intensity-lab-cache-test-{}", std::process::id()));
        let cache = GroupCache::new(&dir);
        let spec = GroupSpec::yo();
        let cfg = BuildConfig::default();
        let (g, hit) = cache.load_or_build(&spec, &cfg).unwrap();
        assert!(!hit);
        let (h, hit) = cache.load_or_build(&spec, &cfg).unwrap();
        assert!(hit);
        assert_eq!(g.order(), h.order());
        assert_eq!(g.gens(), h.gens());
        assert!(g.elements().step_by(7).all(|x| g.elements().all(|y| g.mul(x, y) == h.mul(x, y))));
        assert_eq!(cache.clear().unwrap(), 1);
        let _ = fs::remove_dir_all(dir);
    }
}
