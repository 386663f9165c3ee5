//! JSON-lines store of computed cycle values.
//!
//! The first line is a header recording the schema version and the settings
//! the values were computed with; every following line is one vertex. Floats
//! are written in shortest round-trip form, so a value read back is bit-for-bit
//! the value that was computed.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cycle_integral::{log_epsilon, CycleValue, Orientation};
use crate::error::{Error, Result};
use crate::tree_path::NodeKey;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheHeader {
    pub schema: u32,
    pub tol: f64,
    pub series_order: usize,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheRecord {
    pub path: NodeKey,
    pub p: u64,
    pub q: u64,
    pub c: String,
    #[serde(rename = "J_re")]
    pub big_j_re: f64,
    #[serde(rename = "J_im")]
    pub big_j_im: f64,
    pub j_re: f64,
    pub j_im: f64,
    pub log_eps: f64,
    pub quad_err: f64,
}

impl From<&CycleValue> for CacheRecord {
    fn from(v: &CycleValue) -> Self {
        CacheRecord {
            path: v.key.clone(),
            p: v.p,
            q: v.q,
            c: v.c.to_string(),
            big_j_re: v.big_j.re,
            big_j_im: v.big_j.im,
            j_re: v.j.re,
            j_im: v.j.im,
            log_eps: v.log_eps,
            quad_err: v.quad_err,
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300)
}

impl CacheRecord {
    /// Checks the record against itself: `log ε` must match `c` and `j` must be `J / (2 log ε)`.
    fn into_value(self) -> std::result::Result<CycleValue, String> {
        let c: BigUint = self.c.parse().map_err(|_| format!("bad Markov number {:?}", self.c))?;
        if self.q == 0 || self.p >= self.q {
            return Err(format!("bad fraction {}/{}", self.p, self.q));
        }
        let log_eps = log_epsilon(&c);
        if !close(log_eps, self.log_eps) {
            return Err(format!("log_eps {} does not match c = {c}", self.log_eps));
        }
        let big_j = Complex64::new(self.big_j_re, self.big_j_im);
        let j = big_j / (2.0 * self.log_eps);
        if !close(j.re, self.j_re) || !close(j.im, self.j_im) {
            return Err("j is not J / (2 log eps)".into());
        }
        Ok(CycleValue {
            key: self.path,
            p: self.p,
            q: self.q,
            c,
            big_j,
            j: Complex64::new(self.j_re, self.j_im),
            log_eps: self.log_eps,
            quad_err: self.quad_err,
        })
    }
}

/// Values loaded from disk plus a handle for appending new ones.
#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    header: CacheHeader,
    values: HashMap<NodeKey, CycleValue>,
    fresh: bool,
}

impl ResultCache {
    /// Opens `path`, or prepares a new cache there if it does not exist or is empty.
    /// A cache written with different settings is refused rather than mixed.
    pub fn open(path: &Path, header: CacheHeader) -> Result<Self> {
        let mut cache = ResultCache {
            path: path.to_path_buf(),
            header,
            values: HashMap::new(),
            fresh: true,
        };
        if !path.exists() {
            return Ok(cache);
        }
        let mut lines = BufReader::new(File::open(path)?).lines().enumerate();
        let Some((_, first)) = lines.next() else { return Ok(cache) };
        let corrupt = |line: usize, reason: String| Error::CorruptCache { line: line + 1, reason };
        let found: CacheHeader = serde_json::from_str(&first?).map_err(|e| corrupt(0, format!("header: {e}")))?;
        if found.schema != SCHEMA_VERSION {
            return Err(corrupt(0, format!("schema {} is not {SCHEMA_VERSION}", found.schema)));
        }
        if found != cache.header {
            return Err(Error::Config(format!(
                "cache {} was written with tol {:e}, series order {}, orientation {:?}; \
                 rerun with those settings or choose another cache file",
                path.display(),
                found.tol,
                found.series_order,
                found.orientation
            )));
        }
        cache.fresh = false;
        for (i, line) in lines {
            let line = line?;
            let rec: CacheRecord = serde_json::from_str(&line).map_err(|e| corrupt(i, e.to_string()))?;
            let key = rec.path.clone();
            let value = rec.into_value().map_err(|e| corrupt(i, format!("{key}: {e}")))?;
            if let Some(prev) = cache.values.insert(key.clone(), value) {
                if Some(&prev) != cache.values.get(&key) {
                    return Err(corrupt(i, format!("conflicting records for {key}")));
                }
            }
        }
        Ok(cache)
    }

    pub fn get(&self, key: &NodeKey) -> Option<&CycleValue> {
        self.values.get(key)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Appends values not yet stored, in the given order.
    pub fn append(&mut self, new: &[CycleValue]) -> Result<()> {
        let new: Vec<&CycleValue> = new.iter().filter(|v| !self.values.contains_key(&v.key)).collect();
        if new.is_empty() && !self.fresh {
            return Ok(());
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .truncate(false)
            .open(&self.path)?;
        let mut w = BufWriter::new(file);
        if self.fresh {
            serde_json::to_writer(&mut w, &self.header)?;
            writeln!(w)?;
            self.fresh = false;
        }
        for v in new {
            serde_json::to_writer(&mut w, &CacheRecord::from(v))?;
            writeln!(w)?;
            self.values.insert(v.key.clone(), v.clone());
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle_integral::CycleIntegrator;
    use crate::markov_tree::MarkovTree;

    fn header() -> CacheHeader {
        CacheHeader {
            schema: SCHEMA_VERSION,
            tol: 1e-10,
            series_order: 40,
            orientation: Orientation::Reversed,
        }
    }

    fn values() -> Vec<CycleValue> {
        let tree = MarkovTree::build(2).unwrap();
        CycleIntegrator::default().evaluate_tree(&tree).unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let vals = values();
        let mut c = ResultCache::open(&path, header()).unwrap();
        assert!(c.is_empty());
        c.append(&vals[..3]).unwrap();
        c.append(&vals).unwrap();
        let back = ResultCache::open(&path, header()).unwrap();
        assert_eq!(back.len(), vals.len());
        for v in &vals {
            assert_eq!(back.get(&v.key), Some(v));
        }
        let lines = std::fs::read_to_string(&path).unwrap().lines().count();
        assert_eq!(lines, vals.len() + 1);
    }

    #[test]
    fn rejects_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        ResultCache::open(&path, header()).unwrap().append(&values()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();

        let garbage = text.replacen("\"J_re\":", "\"J_re\":x", 1);
        std::fs::write(&path, garbage).unwrap();
        assert!(matches!(ResultCache::open(&path, header()), Err(Error::CorruptCache { .. })));

        // a plausible but altered number breaks the J/j relation
        let line = text.lines().nth(2).unwrap();
        let rec: CacheRecord = serde_json::from_str(line).unwrap();
        let altered = CacheRecord { big_j_re: rec.big_j_re + 1.0, ..rec };
        let edited = text.replace(line, &serde_json::to_string(&altered).unwrap());
        std::fs::write(&path, edited).unwrap();
        assert!(matches!(
            ResultCache::open(&path, header()),
            Err(Error::CorruptCache { line: 3, .. })
        ));
    }

    #[test]
    fn refuses_other_settings() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        ResultCache::open(&path, header()).unwrap().append(&values()).unwrap();
        let other = CacheHeader { tol: 1e-8, ..header() };
        assert!(matches!(ResultCache::open(&path, other), Err(Error::Config(_))));
    }
}
