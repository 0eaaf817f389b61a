//! Error patterns supported on trapping sets.
//!
//! For a class of trapping sets, the weight-`k` patterns are the `k`-subsets
//! of each orbit representative. Patterns of a larger class that repeat a
//! pattern of a smaller one are dropped, which leaves one pattern per
//! distinct configuration that a decoder has to be tested on.

mod file;

use std::collections::{BTreeMap, HashSet};

use sha2::{Digest, Sha256};

use crate::codes::SymmetryGroup;
use crate::topology::{write_ts_list, TrappingSet, TsClass};

pub use file::{parse_error_set, write_error_set, EsetFileError};

/// Support of an error pattern, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ErrorPattern {
    support: Vec<usize>,
}

impl ErrorPattern {
    pub fn new(mut support: Vec<usize>) -> Self {
        support.sort_unstable();
        support.dedup();
        Self { support }
    }
    pub fn support(&self) -> &[usize] {
        &self.support
    }
    pub fn weight(&self) -> usize {
        self.support.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorSet {
    pub label: String,
    /// Duplicate-free, sorted.
    pub patterns: Vec<ErrorPattern>,
    /// SHA-256 of the trapping-set list the patterns were drawn from.
    pub source_hash: String,
    /// Number of patterns before any duplicate removal.
    pub raw_count: usize,
}

impl ErrorSet {
    pub fn len(&self) -> usize {
        self.patterns.len()
    }
    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EsetError {
    #[error("pattern weight must be at least 1")]
    ZeroWeight,
    #[error("weight {k} exceeds the largest trapping set ({max_a} variables)")]
    WeightTooLarge { k: usize, max_a: usize },
    #[error("trapping-set source covers ({have_a},{have_b}), requested ({want_a},{want_b})")]
    IncompleteSource { have_a: usize, have_b: usize, want_a: usize, want_b: usize },
}

/// Which smaller classes a class is deduplicated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DedupRule {
    /// Every class that precedes it in `(a, b)` order.
    #[default]
    Lexicographic,
    /// Classes with `a' < a` and `b' < b`.
    StrictBoth,
    /// Classes with `a' < a`.
    SmallerSize,
}

impl DedupRule {
    fn precedes(self, smaller: (usize, usize), larger: (usize, usize)) -> bool {
        match self {
            Self::Lexicographic => smaller < larger,
            Self::StrictBoth => smaller.0 < larger.0 && smaller.1 < larger.1,
            Self::SmallerSize => smaller.0 < larger.0,
        }
    }
}

/// When two patterns count as the same.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PatternIdentity {
    /// Equal up to an automorphism from the code's symmetry group.
    #[default]
    Orbit,
    /// Equal supports.
    Support,
}

/// Pattern weights included in [`build_error_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Weights {
    /// Only weight `t`.
    #[default]
    Exactly,
    /// Every weight `1..=t`.
    UpTo,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EsetOptions {
    pub dedup: DedupRule,
    pub identity: PatternIdentity,
    pub weights: Weights,
}

/// Hash identifying a list of trapping-set classes.
pub fn source_hash(classes: &[TsClass]) -> String {
    let text = write_ts_list(classes.iter().flat_map(|c| c.representatives.iter()));
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Calls `f` on every `k`-subset of `items`, in lexicographic order.
pub fn for_each_subset(items: &[usize], k: usize, mut f: impl FnMut(&[usize])) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf = vec![0; k];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        f(&buf);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All weight-`k` patterns supported on `reps`, duplicates removed.
pub fn error_patterns_of_ts(reps: &[TrappingSet], k: usize) -> Result<ErrorSet, EsetError> {
    if k == 0 {
        return Err(EsetError::ZeroWeight);
    }
    let max_a = reps.iter().map(TrappingSet::a).max().unwrap_or(0);
    if k > max_a {
        return Err(EsetError::WeightTooLarge { k, max_a });
    }
    let mut seen = HashSet::new();
    let mut raw = 0;
    for r in reps {
        for_each_subset(r.vars(), k, |s| {
            raw += 1;
            seen.insert(s.to_vec());
        });
    }
    let mut patterns: Vec<ErrorPattern> = seen.into_iter().map(ErrorPattern::new).collect();
    patterns.sort();
    Ok(ErrorSet { label: format!("E^[{k}]"), patterns, source_hash: String::new(), raw_count: raw })
}

/// Weight-`k` patterns of `classes` grouped by `(a, b)`, before deduplication
/// across groups. Groups with `a < k` are omitted.
pub fn class_error_sets(classes: &[TsClass], k: usize) -> Result<Vec<((usize, usize), ErrorSet)>, EsetError> {
    if k == 0 {
        return Err(EsetError::ZeroWeight);
    }
    let hash = source_hash(classes);
    let mut groups: BTreeMap<(usize, usize), Vec<TrappingSet>> = BTreeMap::new();
    for c in classes.iter().filter(|c| c.a >= k) {
        groups.entry((c.a, c.b)).or_default().extend(c.representatives.iter().cloned());
    }
    groups
        .into_iter()
        .map(|((a, b), reps)| {
            let mut set = error_patterns_of_ts(&reps, k)?;
            set.label = format!("E^[{k}](Λ_{{{a},{b}}})");
            set.source_hash = hash.clone();
            Ok(((a, b), set))
        })
        .collect()
}

/// Drops from each set the patterns already present in a preceding one
/// (and repeats within the set), keeping the first occurrence.
///
/// `sets` must be sorted by `(a, b)`. With [`PatternIdentity::Orbit`] a
/// symmetry group is required.
pub fn dedup_against_smaller(
    sets: &[((usize, usize), ErrorSet)],
    rule: DedupRule,
    identity: PatternIdentity,
    group: Option<&SymmetryGroup>,
) -> Vec<((usize, usize), ErrorSet)> {
    let key = |p: &ErrorPattern| -> Vec<usize> {
        match (identity, group) {
            (PatternIdentity::Orbit, Some(g)) => g.canonical(p.support()),
            _ => p.support().to_vec(),
        }
    };
    let keys: Vec<Vec<Vec<usize>>> = sets.iter().map(|(_, s)| s.patterns.iter().map(key).collect()).collect();
    sets.iter()
        .enumerate()
        .map(|(i, (ab, set))| {
            let mut seen: HashSet<&[usize]> = HashSet::new();
            for (j, (ab2, _)) in sets.iter().enumerate() {
                if rule.precedes(*ab2, *ab) {
                    seen.extend(keys[j].iter().map(Vec::as_slice));
                }
            }
            let patterns = set
                .patterns
                .iter()
                .zip(&keys[i])
                .filter(|(_, k)| seen.insert(k.as_slice()))
                .map(|(p, _)| p.clone())
                .collect();
            (*ab, ErrorSet { patterns, ..set.clone() })
        })
        .collect()
}

/// `E^[t](Λ^(A,B))`: the deduplicated patterns of every class with
/// `a <= A`, `b <= B`.
///
/// `coverage` is the `(A, B)` bound the classes were enumerated with.
pub fn build_error_set(
    classes: &[TsClass],
    coverage: (usize, usize),
    t: usize,
    bound: (usize, usize),
    group: Option<&SymmetryGroup>,
    opts: EsetOptions,
) -> Result<ErrorSet, EsetError> {
    if t == 0 {
        return Err(EsetError::ZeroWeight);
    }
    if coverage.0 < bound.0 || coverage.1 < bound.1 {
        return Err(EsetError::IncompleteSource {
            have_a: coverage.0,
            have_b: coverage.1,
            want_a: bound.0,
            want_b: bound.1,
        });
    }
    let in_bound: Vec<TsClass> = classes.iter().filter(|c| c.a <= bound.0 && c.b <= bound.1).cloned().collect();
    let weights = match opts.weights {
        Weights::Exactly => t..=t,
        Weights::UpTo => 1..=t,
    };
    let mut patterns = Vec::new();
    let mut raw = 0;
    for k in weights {
        let per_class = class_error_sets(&in_bound, k)?;
        for (_, s) in dedup_against_smaller(&per_class, opts.dedup, opts.identity, group) {
            raw += s.raw_count;
            patterns.extend(s.patterns);
        }
    }
    patterns.sort();
    patterns.dedup();
    Ok(ErrorSet {
        label: format!("E^[{t}](Λ^({},{}))", bound.0, bound.1),
        patterns,
        source_hash: source_hash(&in_bound),
        raw_count: raw,
    })
}

/// `C(n, t) / size`: how many times smaller the set is than all weight-`t`
/// patterns.
pub fn reduction_factor(n: usize, t: usize, size: usize) -> f64 {
    binomial(n, t) as f64 / size.max(1) as f64
}
