//! JSON-lines store of certified bounds, one record per `(n, k)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::certify::CertifiedBound;
use super::fj::FjMethod;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub n: usize,
    pub k: usize,
    pub fj: f64,
    pub nu_lower: u64,
    pub margin: f64,
    pub method: FjMethod,
    pub solver_tol: f64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl CacheRecord {
    pub fn from_bound(b: &CertifiedBound) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        CacheRecord {
            n: b.n,
            k: b.k,
            fj: b.fj_value,
            nu_lower: b.nu_lower,
            margin: b.certificate_feasibility_margin,
            method: b.method,
            solver_tol: b.solver_tol,
            timestamp,
        }
    }

    pub fn to_bound(&self) -> CertifiedBound {
        CertifiedBound {
            n: self.n,
            k: self.k,
            fj_value: self.fj,
            nu_lower: self.nu_lower,
            certificate_feasibility_margin: self.margin,
            method: self.method,
            solver_tol: self.solver_tol,
        }
    }

    /// Higher `nu_lower` wins; on a tie the smaller FJ value is stronger.
    fn at_least_as_strong(&self, other: &CacheRecord) -> bool {
        self.nu_lower > other.nu_lower || (self.nu_lower == other.nu_lower && self.fj <= other.fj)
    }
}

#[derive(Debug, Clone)]
pub struct BoundCache {
    path: PathBuf,
}

impl BoundCache {
    pub const FILE_NAME: &'static str = "bounds.jsonl";

    pub fn in_dir(dir: impl AsRef<Path>) -> Self {
        BoundCache { path: dir.as_ref().join(Self::FILE_NAME) }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn load(&self) -> Result<Vec<CacheRecord>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })
            })
            .collect()
    }

    pub fn get(&self, n: usize, k: usize) -> Result<Option<CacheRecord>> {
        Ok(self.load()?.into_iter().find(|r| r.n == n && r.k == k))
    }

    /// Stores `rec` unless an at least as strong record for the same `(n, k)` exists.
    /// Returns whether the file changed.
    pub fn insert(&self, rec: &CacheRecord) -> Result<bool> {
        let mut all = self.load()?;
        match all.iter_mut().find(|r| r.n == rec.n && r.k == rec.k) {
            Some(old) if old.at_least_as_strong(rec) => return Ok(false),
            Some(old) => *old = rec.clone(),
            None => all.push(rec.clone()),
        }
        all.sort_by_key(|r| (r.k, r.n));
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = self.path.with_extension("jsonl.tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            for r in &all {
                writeln!(f, "{}", serde_json::to_string(r)?)?;
            }
        }
        fs::rename(&tmp, &self.path)?;
        Ok(true)
    }
}
