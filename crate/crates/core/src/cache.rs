//! On-disk cache of bases and differential matrices.
//!
//! Enabled by setting `RGC_CACHE_DIR`. Each entry lives in a file named by
//! the SHA-256 of its key, which includes the format version, the parity and
//! the selector, so files written by another version are never reused.
//! Unreadable or mismatching entries are recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::{image_matrix, Splitting};
use crate::enumerate::{enumerate, SectorBasis, Selector};
use crate::error::Result;
use crate::format::{graph_to_text, parse_graph, parse_rational};
use crate::linalg::{rank, SparseMatrix};

pub const FORMAT_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "RGC_CACHE_DIR";

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn cache_key(kind: &str, d: u8, selector: &Selector, extra: &str) -> String {
    format!("rgc-cache v{FORMAT_VERSION}|{kind}|d={d}|{selector}|{extra}")
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    let digest = Sha256::digest(key.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    dir.join(format!("{hex}.json"))
}

fn load<T: for<'de> Deserialize<'de>>(dir: &Path, key: &str) -> Option<T> {
    let text = fs::read_to_string(entry_path(dir, key)).ok()?;
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    if v.get("key")?.as_str()? != key || v.get("version")?.as_u64()? != u64::from(FORMAT_VERSION) {
        return None;
    }
    serde_json::from_value(v.get("data")?.clone()).ok()
}

fn store<T: Serialize>(dir: &Path, key: &str, data: &T) -> Result<()> {
    fs::create_dir_all(dir)?;
    let body = serde_json::json!({ "version": FORMAT_VERSION, "key": key, "data": data });
    let path = entry_path(dir, key);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_string(&body)?)?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

/// [`enumerate`] through the cache.
pub fn basis(selector: Selector, d: u8) -> Result<SectorBasis> {
    let Some(dir) = cache_dir() else { return enumerate(selector, d) };
    let key = cache_key("basis", d & 1, &selector, "");
    if let Some(lines) = load::<Vec<String>>(&dir, &key) {
        if let Ok(classes) = lines.iter().map(|l| parse_graph(l)).collect::<Result<Vec<_>>>() {
            if classes.iter().all(|g| selector.matches(g)) {
                return Ok(SectorBasis::from_classes(d & 1, selector, classes));
            }
        }
    }
    let b = enumerate(selector, d)?;
    store(&dir, &key, &b.classes().iter().map(graph_to_text).collect::<Vec<_>>())?;
    Ok(b)
}

#[derive(Serialize, Deserialize)]
struct MatrixEntry {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
    rank: usize,
}

fn splitting_tag(s: Splitting) -> &'static str {
    match s {
        Splitting::Proper => "proper",
        Splitting::WithEmptyArcs => "empty-arcs",
    }
}

/// Rank of the differential out of `src`, computed from the image matrix and
/// cached together with it.
pub fn image_rank(src: &SectorBasis, splitting: Splitting) -> Result<usize> {
    let Some(dir) = cache_dir() else { return Ok(rank(&image_matrix(src, splitting))) };
    let key = cache_key("image", src.parity, &src.selector, splitting_tag(splitting));
    if let Some(m) = load::<MatrixEntry>(&dir, &key) {
        if m.cols == src.len() {
            return Ok(m.rank);
        }
    }
    let m = image_matrix(src, splitting);
    let r = rank(&m);
    let (rows, cols) = m.shape();
    let entries = m.entries().iter().map(|(i, j, x)| (*i, *j, x.to_string())).collect();
    store(&dir, &key, &MatrixEntry { rows, cols, entries, rank: r })?;
    Ok(r)
}

/// Reloads a cached image matrix, if present.
pub fn cached_image_matrix(src: &SectorBasis, splitting: Splitting) -> Option<SparseMatrix> {
    let dir = cache_dir()?;
    let key = cache_key("image", src.parity, &src.selector, splitting_tag(splitting));
    let m = load::<MatrixEntry>(&dir, &key)?;
    let entries =
        m.entries.iter().map(|(i, j, x)| Ok((*i, *j, parse_rational(x)?))).collect::<Result<Vec<_>>>().ok()?;
    Some(SparseMatrix::new(m.rows, m.cols, entries).ok()?.with_bases(format!("image({})", src.id()), src.id()))
}
