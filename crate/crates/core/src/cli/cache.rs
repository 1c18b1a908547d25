//! On-disk cache of `gr` matrices, one text file per matrix.
//!
//! ```text
//! kdirac-matrix k=2 n=2 op=D1-3f9c0a12b4e1 degree=4 weighted=0 rows=960 cols=1120 nnz=5376
//! 0 0 1/1+0/1 i
//! 0 17 0/1-1/1 i
//! ...
//! ```
//!
//! Entries are `row col scalar` in row-major order. A file whose header
//! disagrees with the requested key, or that fails to parse, is corrupt: the
//! event is recorded under [`E_CACHE_CORRUPT`] and the matrix is rebuilt.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use crate::dirac::{gr_matrix, GradedOperator};
use crate::exactla::{ExactMatrix, Scalar};
use crate::syzygy::MatrixSource;
use crate::{Error, Result};

pub const E_CACHE_CORRUPT: &str = "E_CACHE_CORRUPT";

const MAGIC: &str = "kdirac-matrix";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixKey {
    pub k: usize,
    pub n: usize,
    pub op_id: String,
    pub degree: usize,
    pub weighted: bool,
}

impl MatrixKey {
    pub fn for_operator(op: &GradedOperator, degree: usize, weighted: bool) -> Self {
        MatrixKey { k: op.space.k, n: op.space.n, op_id: operator_id(op), degree, weighted }
    }

    fn prefix(&self) -> String {
        format!("{MAGIC} k={} n={} op={} degree={} weighted={}", self.k, self.n, self.op_id, self.degree, u8::from(self.weighted))
    }

    pub fn file_name(&self) -> String {
        format!("k{}_n{}_{}_d{}_{}.mat", self.k, self.n, self.op_id, self.degree, if self.weighted { "w" } else { "u" })
    }
}

/// Operator name plus a digest of its normal form. Discovered operators
/// depend on kernel bases, so the name alone does not identify them.
pub fn operator_id(op: &GradedOperator) -> String {
    let mut h = Sha256::new();
    h.update(format!("{} {} {} {}\n", op.source_dim(), op.target_dim(), op.order, op.weighted));
    for ((c, d), m) in op.op.terms() {
        h.update(format!("{c:?} {d:?}\n"));
        for (r, col, v) in m.triplets() {
            h.update(format!("{r} {col} {}\n", v.to_cache_string()));
        }
    }
    let digest = h.finalize();
    let hex: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
    format!("{}-{hex}", op.name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEvent {
    pub code: &'static str,
    pub path: PathBuf,
    pub reason: String,
}

#[derive(Debug)]
pub struct MatrixCache {
    dir: PathBuf,
    events: Mutex<Vec<CacheEvent>>,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl MatrixCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        Ok(MatrixCache { dir, events: Mutex::new(Vec::new()) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &MatrixKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// Corruption events seen so far, sorted by path.
    pub fn events(&self) -> Vec<CacheEvent> {
        let mut ev = self.events.lock().unwrap().clone();
        ev.sort_by(|a, b| a.path.cmp(&b.path));
        ev
    }

    /// Cached matrix for `key`, or `build()` stored under `key`.
    pub fn get_or_build(&self, key: &MatrixKey, build: impl FnOnce() -> Result<ExactMatrix>) -> Result<ExactMatrix> {
        let path = self.path(key);
        match fs::read_to_string(&path) {
            Ok(text) => match parse(&text, key) {
                Ok(m) => return Ok(m),
                Err(reason) => self.events.lock().unwrap().push(CacheEvent { code: E_CACHE_CORRUPT, path: path.clone(), reason }),
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(Error::Io(format!("{}: {e}", path.display()))),
        }
        let m = build()?;
        self.store(&path, key, &m)?;
        Ok(m)
    }

    fn store(&self, path: &Path, key: &MatrixKey, m: &ExactMatrix) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            key.file_name(),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp).map_err(io)?);
        writeln!(f, "{} rows={} cols={} nnz={}", key.prefix(), m.rows(), m.cols(), m.nnz()).map_err(io)?;
        for (r, c, v) in m.triplets() {
            writeln!(f, "{r} {c} {}", v.to_cache_string()).map_err(io)?;
        }
        f.into_inner().map_err(|e| io(e.into_error()))?.sync_all().map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}

fn parse(text: &str, key: &MatrixKey) -> std::result::Result<ExactMatrix, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let rest = header
        .strip_prefix(&key.prefix())
        .ok_or_else(|| format!("header {header:?} does not match {:?}", key.prefix()))?;
    let field = |name: &str| -> std::result::Result<usize, String> {
        rest.split_whitespace()
            .find_map(|t| t.strip_prefix(name).and_then(|v| v.strip_prefix('=')))
            .ok_or_else(|| format!("header lacks {name}"))?
            .parse()
            .map_err(|_| format!("header field {name} is not a count"))
    };
    let (rows, cols, nnz) = (field("rows")?, field("cols")?, field("nnz")?);
    let mut trip = Vec::with_capacity(nnz);
    let mut last = None;
    for (ln, line) in lines.enumerate() {
        let bad = || format!("line {}: {line:?}", ln + 2);
        let mut it = line.splitn(3, ' ');
        let r: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let c: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let v = Scalar::parse_cache_string(it.next().ok_or_else(bad)?).map_err(|_| bad())?;
        if r >= rows || c >= cols || v.is_zero() || last.is_some_and(|p| p >= (r, c)) {
            return Err(bad());
        }
        last = Some((r, c));
        trip.push((r, c, v));
    }
    if trip.len() != nnz {
        return Err(format!("expected {nnz} entries, found {}", trip.len()));
    }
    Ok(ExactMatrix::from_triplets(rows, cols, trip))
}

impl MatrixSource for MatrixCache {
    fn matrix(&self, op: &GradedOperator, degree: usize) -> Result<ExactMatrix> {
        self.get_or_build(&MatrixKey::for_operator(op, degree, false), || gr_matrix(op, degree, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::build_d0_flat;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = MatrixCache::open(dir.path()).unwrap();
        let d0 = build_d0_flat(2, 2).unwrap();
        let fresh = gr_matrix(&d0, 2, false).unwrap();
        assert_eq!(cache.matrix(&d0, 2).unwrap(), fresh);
        let key = MatrixKey::for_operator(&d0, 2, false);
        let path = cache.path(&key);
        assert!(path.exists());
        assert_eq!(cache.get_or_build(&key, || panic!("should hit")).unwrap(), fresh);

        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("1/1", "1/0", 1)).unwrap();
        assert_eq!(cache.matrix(&d0, 2).unwrap(), fresh);
        let ev = cache.events();
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].code, E_CACHE_CORRUPT);
        assert_eq!(fs::read_to_string(&path).unwrap(), text);
    }

    #[test]
    fn header_mismatch_is_corrupt() {
        let key = MatrixKey { k: 2, n: 2, op_id: "D0-00".into(), degree: 1, weighted: false };
        let other = MatrixKey { degree: 2, ..key.clone() };
        let text = format!("{} rows=0 cols=0 nnz=0\n", key.prefix());
        assert!(parse(&text, &key).is_ok());
        assert!(parse(&text, &other).is_err());
        assert!(parse("", &key).is_err());
    }

    #[test]
    fn ids_separate_operators() {
        let a = build_d0_flat(2, 2).unwrap();
        let mut b = a.clone();
        b.op = b.op.scale(&Scalar::from_int(2));
        assert_ne!(operator_id(&a), operator_id(&b));
        assert_eq!(operator_id(&a), operator_id(&build_d0_flat(2, 2).unwrap()));
    }
}
