//! On-disk persistence for spectra and a small content-addressed cache.
//!
//! Spectrum files are plain text so the number-theoretic tables stay
//! auditable: exact integers only, one record per line; regulators and
//! norms are recomputed on load so no floating-point value is ever
//! persisted. Writers go through a temp file and an atomic rename, so a
//! concurrent reader only ever sees complete files.

use crate::error::{Error, Result};
use crate::quadratic::{BuildMethod, DiscriminantRecord, NormSpectrum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// 64-bit FNV-1a, used as the stable content hash for cache entries and CSV
/// metadata.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Serialize a spectrum: header `gel-spectrum v1 x_max=<decimal>`, then one
/// `d<TAB>t<TAB>u<TAB>h` line per record.
pub fn spectrum_to_string(spectrum: &NormSpectrum) -> String {
    let mut out = String::new();
    writeln!(out, "gel-spectrum v1 x_max={}", spectrum.x_max()).unwrap();
    for r in spectrum.entries() {
        writeln!(out, "{}\t{}\t{}\t{}", r.d, r.t, r.u, r.h).unwrap();
    }
    out
}

/// Write via temp file + atomic rename.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("gel"),
        std::process::id()
    ));
    std::fs::create_dir_all(dir)?;
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn save_spectrum(spectrum: &NormSpectrum, path: &Path) -> Result<()> {
    write_atomic(path, &spectrum_to_string(spectrum))
}

/// Parse and fully re-validate a spectrum: every record is rebuilt through
/// the validating constructor (Pell relation, fundamentality, h >= 1), then
/// sortedness and coverage are re-checked by the spectrum constructor.
pub fn spectrum_from_str(text: &str) -> Result<NormSpectrum> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, message: "empty file".to_string() })?;
    let rest = header.strip_prefix("gel-spectrum v1 ").ok_or_else(|| Error::Parse {
        line: 1,
        message: format!("expected `gel-spectrum v1` header, found `{header}`"),
    })?;
    let x_max: f64 = rest
        .strip_prefix("x_max=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse { line: 1, message: format!("bad x_max field `{rest}`") })?;
    let mut records = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split('\t').map(str::trim);
        let mut next_u64 = |name: &str| -> Result<u64> {
            cols.next()
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("missing column {name}"),
                })?
                .parse()
                .map_err(|e| Error::Parse { line: line_no, message: format!("bad {name}: {e}") })
        };
        let d = next_u64("d")?;
        let t = next_u64("t")?;
        let u = next_u64("u")?;
        let h = next_u64("h")?;
        let h: u32 = h
            .try_into()
            .map_err(|_| Error::Parse { line: line_no, message: format!("h = {h} out of range") })?;
        let record = DiscriminantRecord::new(d, t, u, h)
            .map_err(|e| Error::Validation(format!("line {line_no}: {e}")))?;
        records.push(record);
    }
    NormSpectrum::from_records(records, x_max, BuildMethod::ByDiscriminant)
}

pub fn load_spectrum(path: &Path) -> Result<NormSpectrum> {
    spectrum_from_str(&std::fs::read_to_string(path)?)
}

/// What a cache slot holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheKind {
    Spectrum,
    Spectral,
    Zeros,
}

impl CacheKind {
    fn name(self) -> &'static str {
        match self {
            CacheKind::Spectrum => "spectrum",
            CacheKind::Spectral => "spectral",
            CacheKind::Zeros => "zeros",
        }
    }
}

/// A validated cache slot: payload path plus the hash recorded at write time.
#[derive(Debug, Clone)]
pub struct CacheEntry {
    pub kind: CacheKind,
    pub param: String,
    pub content_hash: u64,
    pub payload: PathBuf,
}

/// Content-addressed cache directory. The environment variable GEL_CACHE_DIR
/// supplies the location when no explicit directory is configured.
pub struct Cache {
    dir: PathBuf,
}

pub const CACHE_ENV: &str = "GEL_CACHE_DIR";

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// Resolve from an optional CLI flag, falling back to the environment.
    pub fn resolve(flag: Option<&Path>) -> Option<Cache> {
        match flag {
            Some(p) => Some(Cache::new(p)),
            None => std::env::var_os(CACHE_ENV).map(|v| Cache::new(PathBuf::from(v))),
        }
    }

    fn slot_paths(&self, kind: CacheKind, param: &str) -> (PathBuf, PathBuf) {
        let base = format!("{}-{}", kind.name(), param.replace(['/', ' '], "_"));
        (self.dir.join(format!("{base}.tsv")), self.dir.join(format!("{base}.hash")))
    }

    /// Store a payload, recording its hash in a sidecar written last.
    pub fn store(&self, kind: CacheKind, param: &str, payload: &str) -> Result<CacheEntry> {
        let (data_path, hash_path) = self.slot_paths(kind, param);
        let hash = fnv1a64(payload.as_bytes());
        write_atomic(&data_path, payload)?;
        write_atomic(&hash_path, &format!("{hash:016x}\n"))?;
        Ok(CacheEntry { kind, param: param.to_string(), content_hash: hash, payload: data_path })
    }

    /// Load a payload, verifying the recorded hash; a mismatch or a missing
    /// slot returns Ok(None) so callers rebuild.
    pub fn lookup(&self, kind: CacheKind, param: &str) -> Result<Option<(CacheEntry, String)>> {
        let (data_path, hash_path) = self.slot_paths(kind, param);
        if !data_path.exists() || !hash_path.exists() {
            return Ok(None);
        }
        let payload = std::fs::read_to_string(&data_path)?;
        let recorded = std::fs::read_to_string(&hash_path)?;
        let recorded = u64::from_str_radix(recorded.trim(), 16)
            .map_err(|e| Error::Validation(format!("corrupt cache hash file: {e}")))?;
        let actual = fnv1a64(payload.as_bytes());
        if recorded != actual {
            return Ok(None);
        }
        let entry = CacheEntry {
            kind,
            param: param.to_string(),
            content_hash: actual,
            payload: data_path,
        };
        Ok(Some((entry, payload)))
    }
}
