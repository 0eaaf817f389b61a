use std::fmt;

/// An ordered rule sequence with the error weight at which each rule was
/// added and a shared iteration budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiversitySet {
    pub rules: Vec<String>,
    /// Weight stage of each rule, non-decreasing.
    pub stages: Vec<usize>,
    pub n_iter: usize,
    /// Labels of the error sets the set was selected on.
    pub provenance: Vec<String>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ManifestError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing n_iter line")]
    MissingIter,
    #[error("stages must not decrease")]
    Unordered,
}

impl DiversitySet {
    pub fn new(rules: Vec<String>, stages: Vec<usize>, n_iter: usize, provenance: Vec<String>) -> Self {
        assert_eq!(rules.len(), stages.len());
        Self { rules, stages, n_iter, provenance }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Rules added at weight `k` or below.
    pub fn prefix(&self, k: usize) -> &[String] {
        &self.rules[..self.stages.iter().take_while(|&&s| s <= k).count()]
    }

    /// `(k, end)` for each stage: the first `end` rules form the stage `k` set.
    pub fn stage_ends(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (i, &k) in self.stages.iter().enumerate() {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 = i + 1,
                _ => out.push((k, i + 1)),
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ManifestError> {
        let mut n_iter = None;
        let mut rules = Vec::new();
        let mut stages = Vec::new();
        let mut provenance = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| ManifestError::Parse { line: i + 1, msg: msg.to_string() };
            let (key, rest) = line.split_once(char::is_whitespace).ok_or_else(|| err("expected key and value"))?;
            let rest = rest.trim();
            match key {
                "n_iter" => n_iter = Some(rest.parse().map_err(|_| err("bad n_iter"))?),
                "rule" => {
                    let mut it = rest.split_whitespace();
                    let id = it.next().ok_or_else(|| err("missing rule id"))?;
                    let k = it.next().ok_or_else(|| err("missing stage"))?.parse().map_err(|_| err("bad stage"))?;
                    if it.next().is_some() {
                        return Err(err("trailing content"));
                    }
                    rules.push(id.to_string());
                    stages.push(k);
                }
                "covers" => provenance.push(rest.to_string()),
                _ => return Err(err("unknown key")),
            }
        }
        if stages.windows(2).any(|w| w[0] > w[1]) {
            return Err(ManifestError::Unordered);
        }
        Ok(Self { rules, stages, n_iter: n_iter.ok_or(ManifestError::MissingIter)?, provenance })
    }
}

impl fmt::Display for DiversitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n_iter {}", self.n_iter)?;
        for (r, k) in self.rules.iter().zip(&self.stages) {
            writeln!(f, "rule {r} {k}")?;
        }
        for p in &self.provenance {
            writeln!(f, "covers {p}")?;
        }
        Ok(())
    }
}
