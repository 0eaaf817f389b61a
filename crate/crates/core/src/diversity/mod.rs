//! Decoder diversity: which rules correct which patterns, greedy selection
//! of a covering rule sequence, and coverage checks.

mod cache;
mod manifest;

use rayon::prelude::*;

use crate::codes::TannerGraph;
use crate::errorsets::{ErrorPattern, ErrorSet};
use crate::faid::{DecodeError, Decoder, DecoderConfig, FaidRule};

pub use cache::MatrixCache;
pub use manifest::{DiversitySet, ManifestError};

/// A fixed-length bit set over pattern indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternBits {
    len: usize,
    words: Vec<u64>,
}

impl PatternBits {
    pub fn new(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }
    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        (0..len).for_each(|i| b.set(i));
        b
    }
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut b = Self::new(bits.len());
        bits.iter().enumerate().filter(|(_, &x)| x).for_each(|(i, _)| b.set(i));
        b
    }
    pub fn len(&self) -> usize {
        self.len
    }
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    pub fn none(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
    /// `|self & other|`.
    pub fn overlap(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
    /// `self &= !other`.
    pub fn remove(&mut self, other: &Self) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
    }
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
    pub fn words(&self) -> &[u64] {
        &self.words
    }
    pub fn from_words(len: usize, words: Vec<u64>) -> Option<Self> {
        (words.len() == len.div_ceil(64)).then_some(Self { len, words })
    }
}

/// Row `i` holds the patterns that rule `i` corrects within `n_iter`
/// iterations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectabilityMatrix {
    pub decoders: Vec<String>,
    pub n_patterns: usize,
    pub n_iter: usize,
    rows: Vec<PatternBits>,
}

impl CorrectabilityMatrix {
    pub fn from_rows(decoders: Vec<String>, n_patterns: usize, n_iter: usize, rows: Vec<PatternBits>) -> Self {
        assert_eq!(decoders.len(), rows.len());
        assert!(rows.iter().all(|r| r.len() == n_patterns));
        Self { decoders, n_patterns, n_iter, rows }
    }

    pub fn row(&self, i: usize) -> &PatternBits {
        &self.rows[i]
    }
    pub fn row_sum(&self, i: usize) -> usize {
        self.rows[i].count()
    }
    pub fn corrects(&self, decoder: usize, pattern: usize) -> bool {
        self.rows[decoder].get(pattern)
    }
    pub fn n_decoders(&self) -> usize {
        self.rows.len()
    }
}

/// One rule's row over `patterns`.
pub fn correctability_row(
    g: &TannerGraph,
    rule: &FaidRule,
    patterns: &[ErrorPattern],
    n_iter: usize,
    cfg: DecoderConfig,
) -> Result<PatternBits, DecodeError> {
    let proto = Decoder::new(g, cfg)?;
    let flags = patterns
        .par_iter()
        .map_init(|| proto.clone(), |d, p| d.corrects(rule, p.support(), n_iter))
        .collect::<Result<Vec<bool>, _>>()?;
    Ok(PatternBits::from_bools(&flags))
}

pub fn correctability_matrix(
    g: &TannerGraph,
    rules: &[FaidRule],
    eset: &ErrorSet,
    n_iter: usize,
    cfg: DecoderConfig,
) -> Result<CorrectabilityMatrix, DecodeError> {
    let rows = rules
        .iter()
        .map(|r| correctability_row(g, r, &eset.patterns, n_iter, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CorrectabilityMatrix::from_rows(
        rules.iter().map(|r| r.id().to_string()).collect(),
        eset.len(),
        n_iter,
        rows,
    ))
}

/// One greedy pick.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pick {
    pub decoder: usize,
    /// Residual patterns it corrected.
    pub gain: usize,
    /// Residual size after the pick.
    pub remaining: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub picks: Vec<Pick>,
    pub residual: PatternBits,
}

impl GreedyOutcome {
    pub fn covered(&self) -> bool {
        self.residual.none()
    }
}

/// Repeatedly takes the decoder (outside `excluded`) correcting the most
/// residual patterns, lowest index first on ties, until the residual is
/// empty or no remaining decoder corrects anything in it.
pub fn greedy_cover(matrix: &CorrectabilityMatrix, mut residual: PatternBits, excluded: &[usize]) -> GreedyOutcome {
    let mut used = vec![false; matrix.n_decoders()];
    excluded.iter().for_each(|&i| used[i] = true);
    let mut picks = Vec::new();
    while !residual.none() {
        let best = (0..matrix.n_decoders())
            .filter(|&j| !used[j])
            .map(|j| (matrix.row(j).overlap(&residual), j))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((gain, j)) = best.filter(|&(gain, _)| gain > 0) else {
            break;
        };
        used[j] = true;
        residual.remove(matrix.row(j));
        picks.push(Pick { decoder: j, gain, remaining: residual.count() });
    }
    GreedyOutcome { picks, residual }
}

/// Record of one weight stage of the selection.
#[derive(Clone, Debug)]
pub struct StageReport {
    pub k: usize,
    pub label: String,
    pub n_patterns: usize,
    /// Patterns left after the rules of earlier stages.
    pub initial_residual: usize,
    pub picks: Vec<Pick>,
    /// Row sums over the stage's full error set, for every base rule.
    pub row_sums: Vec<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum SelectionError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("no stages given")]
    NoStages,
    #[error("base set is empty")]
    EmptyBase,
    #[error("selection failed at weight {k}: {} patterns remain uncorrected", residual.len())]
    Exhausted { k: usize, residual: Vec<ErrorPattern>, partial: Box<DiversitySet>, stages: Vec<StageReport> },
}

#[derive(Clone, Debug)]
pub struct Selection {
    pub set: DiversitySet,
    pub stages: Vec<StageReport>,
}

/// The stage loop of the selection, over precomputed matrices that share
/// one decoder order.
#[derive(Clone, Debug, Default)]
pub struct StagedGreedy {
    /// Decoder indices in selection order.
    pub chosen: Vec<usize>,
    /// Stage weight of each chosen decoder.
    pub chosen_stage: Vec<usize>,
    pub reports: Vec<StageReport>,
}

impl StagedGreedy {
    pub fn new() -> Self {
        Self::default()
    }

    /// Removes what earlier picks correct, then extends the selection
    /// greedily. Returns the stage's outcome; the selection stays valid
    /// even when it does not cover.
    pub fn stage(&mut self, k: usize, label: &str, m: &CorrectabilityMatrix) -> GreedyOutcome {
        let mut residual = PatternBits::full(m.n_patterns);
        for &c in &self.chosen {
            residual.remove(m.row(c));
        }
        let initial_residual = residual.count();
        let out = greedy_cover(m, residual, &self.chosen);
        for p in &out.picks {
            self.chosen.push(p.decoder);
            self.chosen_stage.push(k);
        }
        self.reports.push(StageReport {
            k,
            label: label.to_string(),
            n_patterns: m.n_patterns,
            initial_residual,
            picks: out.picks.clone(),
            row_sums: (0..m.n_decoders()).map(|i| m.row_sum(i)).collect(),
        });
        out
    }

    /// Chosen decoders up to and including stage `k`.
    pub fn prefix(&self, k: usize) -> &[usize] {
        &self.chosen[..self.chosen_stage.iter().take_while(|&&s| s <= k).count()]
    }
}

/// Greedy decoder diversity selection over error sets of increasing weight.
///
/// `stages` are `(k, E^k)` pairs in increasing `k`. For each stage, patterns
/// already corrected by rules chosen earlier are removed first, then rules
/// are added greedily from `base` until the residual is empty.
pub fn select_diversity(
    g: &TannerGraph,
    base: &[FaidRule],
    stages: &[(usize, ErrorSet)],
    n_iter: usize,
    cfg: DecoderConfig,
    cache: Option<&MatrixCache>,
) -> Result<Selection, SelectionError> {
    if base.is_empty() {
        return Err(SelectionError::EmptyBase);
    }
    if stages.is_empty() {
        return Err(SelectionError::NoStages);
    }
    let ids: Vec<String> = base.iter().map(|r| r.id().to_string()).collect();
    let mut sel = StagedGreedy::new();
    let mut provenance = Vec::new();
    for (k, eset) in stages {
        let rows = base
            .iter()
            .map(|r| match cache {
                Some(c) => c.row(g, r, eset, n_iter, cfg),
                None => correctability_row(g, r, &eset.patterns, n_iter, cfg),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = CorrectabilityMatrix::from_rows(ids.clone(), eset.len(), n_iter, rows);
        let out = sel.stage(*k, &eset.label, &m);
        provenance.push(eset.label.clone());
        if !out.covered() {
            let set = DiversitySet::new(
                sel.chosen.iter().map(|&i| ids[i].clone()).collect(),
                sel.chosen_stage.clone(),
                n_iter,
                provenance,
            );
            let residual = out.residual.ones().map(|i| eset.patterns[i].clone()).collect();
            return Err(SelectionError::Exhausted { k: *k, residual, partial: Box::new(set), stages: sel.reports });
        }
    }
    let set = DiversitySet::new(sel.chosen.iter().map(|&i| ids[i].clone()).collect(), sel.chosen_stage, n_iter, provenance);
    Ok(Selection { set, stages: sel.reports })
}

/// Patterns of `eset` that no rule in `rules` corrects, each rule started
/// afresh with `n_iter` iterations.
pub fn coverage_check(
    g: &TannerGraph,
    rules: &[FaidRule],
    n_iter: usize,
    cfg: DecoderConfig,
    eset: &ErrorSet,
) -> Result<Vec<ErrorPattern>, DecodeError> {
    let proto = Decoder::new(g, cfg)?;
    let hit = eset
        .patterns
        .par_iter()
        .map_init(|| proto.clone(), |d, p| d.first_correcting(rules, p.support(), n_iter).map(|s| s.is_none()))
        .collect::<Result<Vec<bool>, _>>()?;
    Ok(eset.patterns.iter().zip(hit).filter(|(_, h)| *h).map(|(p, _)| p.clone()).collect())
}

/// Residual sizes after each rule of `rules` is applied in turn.
pub fn residual_trajectory(matrix: &CorrectabilityMatrix) -> Vec<usize> {
    let mut residual = PatternBits::full(matrix.n_patterns);
    (0..matrix.n_decoders())
        .map(|i| {
            residual.remove(matrix.row(i));
            residual.count()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[usize]], n: usize) -> CorrectabilityMatrix {
        let rows: Vec<PatternBits> = rows
            .iter()
            .map(|r| {
                let mut b = PatternBits::new(n);
                r.iter().for_each(|&i| b.set(i));
                b
            })
            .collect();
        CorrectabilityMatrix::from_rows((0..rows.len()).map(|i| format!("R{i}")).collect(), n, 1, rows)
    }

    #[test]
    fn hand_simulated_greedy() {
        // {e1,e2}, {e2,e3}, {e3} over {e1,e2,e3}
        let m = matrix(&[&[0, 1], &[1, 2], &[2]], 3);
        let out = greedy_cover(&m, PatternBits::full(3), &[]);
        assert!(out.covered());
        assert_eq!(out.picks.iter().map(|p| p.decoder).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(out.picks[0], Pick { decoder: 0, gain: 2, remaining: 1 });
    }

    #[test]
    fn ties_go_to_the_lowest_index() {
        let m = matrix(&[&[0], &[1, 2], &[0, 3]], 4);
        let out = greedy_cover(&m, PatternBits::full(4), &[]);
        assert_eq!(out.picks.iter().map(|p| p.decoder).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn uncoverable_pattern_is_left() {
        let m = matrix(&[&[0], &[1]], 3);
        let out = greedy_cover(&m, PatternBits::full(3), &[]);
        assert!(!out.covered());
        assert_eq!(out.residual.ones().collect::<Vec<_>>(), vec![2]);
        assert_eq!(residual_trajectory(&m), vec![2, 1]);
    }

    #[test]
    fn empty_rule_list_gives_empty_matrix() {
        let g = crate::codes::build_tanner_155();
        let e = ErrorSet { label: "x".into(), patterns: vec![ErrorPattern::new(vec![1])], source_hash: String::new(), raw_count: 1 };
        let m = correctability_matrix(&g, &[], &e, 10, DecoderConfig::default()).unwrap();
        assert_eq!(m.n_decoders(), 0);
        assert_eq!(coverage_check(&g, &[], 10, DecoderConfig::default(), &e).unwrap(), e.patterns);
    }
}
