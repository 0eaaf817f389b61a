use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{correctability_row, PatternBits};
use crate::codes::{serialize_alist, TannerGraph};
use crate::errorsets::ErrorSet;
use crate::faid::{DecodeError, DecoderConfig, FaidRule};

/// On-disk store of correctability rows keyed by code, rule table, error
/// set contents, iteration budget and decoder options.
#[derive(Clone, Debug)]
pub struct MatrixCache {
    dir: PathBuf,
}

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(g: &TannerGraph, rule: &FaidRule, eset: &ErrorSet, n_iter: usize, cfg: DecoderConfig) -> String {
        let mut h = Sha256::new();
        h.update(serialize_alist(g).as_bytes());
        h.update(rule.to_text().as_bytes());
        for p in &eset.patterns {
            for v in p.support() {
                h.update((*v as u32).to_le_bytes());
            }
            h.update(u32::MAX.to_le_bytes());
        }
        h.update(format!("n_iter {n_iter} omega {} tie {}", cfg.omega, cfg.tie).as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn load(&self, key: &str, n: usize) -> Option<PatternBits> {
        let bytes = fs::read(self.dir.join(key)).ok()?;
        let (head, body) = bytes.split_at_checked(8)?;
        if u64::from_le_bytes(head.try_into().ok()?) != n as u64 || body.len() % 8 != 0 {
            return None;
        }
        let words = body.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect();
        PatternBits::from_words(n, words)
    }

    fn store(&self, key: &str, row: &PatternBits) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut bytes = (row.len() as u64).to_le_bytes().to_vec();
        row.words().iter().for_each(|w| bytes.extend_from_slice(&w.to_le_bytes()));
        let tmp = self.dir.join(format!("{key}.tmp"));
        fs::write(&tmp, bytes)?;
        fs::rename(tmp, self.dir.join(key))
    }

    /// The row for `rule`, computed and stored on a miss. Write failures
    /// only cost the cache.
    pub fn row(
        &self,
        g: &TannerGraph,
        rule: &FaidRule,
        eset: &ErrorSet,
        n_iter: usize,
        cfg: DecoderConfig,
    ) -> Result<PatternBits, DecodeError> {
        let key = Self::key(g, rule, eset, n_iter, cfg);
        if let Some(row) = self.load(&key, eset.len()) {
            return Ok(row);
        }
        let row = correctability_row(g, rule, &eset.patterns, n_iter, cfg)?;
        let _ = self.store(&key, &row);
        Ok(row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::build_tanner_155;
    use crate::errorsets::ErrorPattern;
    use crate::faid::builtin;

    #[test]
    fn cached_row_matches_fresh_row() {
        let dir = tempfile::tempdir().unwrap();
        let cache = MatrixCache::new(dir.path());
        let g = build_tanner_155();
        let e = ErrorSet {
            label: "t".into(),
            patterns: vec![ErrorPattern::new(vec![0, 1]), ErrorPattern::new(vec![4]), ErrorPattern::new(vec![0, 2, 10, 34])],
            source_hash: String::new(),
            raw_count: 3,
        };
        let rule = builtin("D0").unwrap();
        let cfg = DecoderConfig::default();
        let a = cache.row(&g, &rule, &e, 15, cfg).unwrap();
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
        let b = cache.row(&g, &rule, &e, 15, cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, correctability_row(&g, &rule, &e.patterns, 15, cfg).unwrap());
        let other = MatrixCache::key(&g, &rule, &e, 16, cfg);
        assert_ne!(other, MatrixCache::key(&g, &rule, &e, 15, cfg));
    }
}
