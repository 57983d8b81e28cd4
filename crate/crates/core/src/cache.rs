//! On-disk registry cache: serialized reference summands keyed by
//! (format version, p, degree, tabloid-order version), protected by a
//! content digest and an exclusive lock file for writers. Readers validate
//! the digest and silently rebuild on any mismatch.

use crate::combinatorics::Label;
use crate::fp_linalg::FpMatrix;
use crate::registry::{RegistryEntry, Session};
use crate::rep::{signed_young_rep, Summand};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Bumped whenever the serialized layout changes.
pub const FORMAT_VERSION: u32 = 1;
/// Bumped whenever the tabloid enumeration order changes, which would
/// invalidate every stored idempotent.
pub const TABLOID_ORDER_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    label: Label,
    dim: usize,
    vertex_mults: Vec<u32>,
    basis: FpMatrix,
    proj: FpMatrix,
}

#[derive(Serialize, Deserialize)]
pub struct CacheFile {
    pub format_version: u32,
    pub tabloid_order_version: u32,
    pub p: u64,
    pub n: u32,
    entries: Vec<CacheEntry>,
    pub digest: String,
}

fn digest_of(entries: &[CacheEntry], p: u64, n: u32) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(&(FORMAT_VERSION, TABLOID_ORDER_VERSION, p, n)).unwrap());
    h.update(serde_json::to_vec(entries).unwrap());
    hex_string(&h.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{:02x}", b)).collect()
}

pub fn cache_path(dir: &Path, p: u64, n: u32) -> PathBuf {
    dir.join(format!(
        "registry_v{}_t{}_p{}_n{}.json",
        FORMAT_VERSION, TABLOID_ORDER_VERSION, p, n
    ))
}

/// Serializes every registry entry of degree `n` held by the session.
pub fn save_registry(session: &Session, n: u32, dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let _lock = LockFile::acquire(dir)?;
    let entries: Vec<CacheEntry> = session
        .registry_entries()
        .iter()
        .filter(|e| e.label.degree(session.p) == n)
        .map(|e| CacheEntry {
            label: e.label.clone(),
            dim: e.dim,
            vertex_mults: e.vertex.mults().to_vec(),
            basis: e.summand.basis.clone(),
            proj: e.summand.proj.clone(),
        })
        .collect();
    let digest = digest_of(&entries, session.p, n);
    let file = CacheFile {
        format_version: FORMAT_VERSION,
        tabloid_order_version: TABLOID_ORDER_VERSION,
        p: session.p,
        n,
        entries,
        digest,
    };
    let path = cache_path(dir, session.p, n);
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_vec(&file).map_err(to_cache_err)?)?;
    std::fs::rename(&tmp, &path)?;
    Ok(path)
}

fn to_cache_err(e: serde_json::Error) -> Error {
    Error::Cache(e.to_string())
}

/// Loads cached registry entries into the session. Returns how many were
/// restored; a missing file, version mismatch, or digest failure restores
/// nothing (the caller rebuilds).
pub fn load_registry(session: &mut Session, n: u32, dir: &Path) -> Result<usize> {
    let path = cache_path(dir, session.p, n);
    let Ok(bytes) = std::fs::read(&path) else {
        return Ok(0);
    };
    let file: CacheFile = match serde_json::from_slice(&bytes) {
        Ok(f) => f,
        Err(_) => return Ok(0), // corrupted: rebuild
    };
    if file.format_version != FORMAT_VERSION
        || file.tabloid_order_version != TABLOID_ORDER_VERSION
        || file.p != session.p
        || file.n != n
    {
        return Ok(0);
    }
    if digest_of(&file.entries, file.p, file.n) != file.digest {
        return Ok(0); // a corrupted byte is detected here
    }
    let mut restored = 0;
    for ce in file.entries {
        let shape = ce.label.bicomp(session.p);
        let parent = Arc::new(signed_young_rep(&shape, session.p, &session.caps)?);
        let summand = Summand::restore(parent, ce.basis, ce.proj)?;
        if summand.dim != ce.dim {
            return Ok(restored); // stale; rebuild the rest
        }
        let entry = RegistryEntry {
            label: ce.label.clone(),
            dim: ce.dim,
            vertex: crate::combinatorics::RhoShape::new(session.p, ce.vertex_mults),
            provenance: shape,
            summand,
        };
        session.adopt_entry(entry);
        restored += 1;
    }
    Ok(restored)
}

/// Exclusive writer lock: a lock file created atomically, removed on drop.
pub struct LockFile {
    path: PathBuf,
}

impl LockFile {
    pub fn acquire(dir: &Path) -> Result<LockFile> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("lock");
        let mut tries = 0;
        loop {
            match std::fs::OpenOptions::new()
                .write(true)
                .create_new(true)
                .open(&path)
            {
                Ok(_) => return Ok(LockFile { path }),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    tries += 1;
                    if tries > 200 {
                        return Err(Error::Cache(format!(
                            "could not acquire {} after 10s",
                            path.display()
                        )));
                    }
                    std::thread::sleep(std::time::Duration::from_millis(50));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
}

impl Drop for LockFile {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.path);
    }
}
