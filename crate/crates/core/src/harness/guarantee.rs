use rayon::prelude::*;

use super::HarnessError;
use crate::codes::{TannerGraph, VarTransform};
use crate::errorsets::{binomial, ErrorPattern, ErrorSet};
use crate::faid::{Decoder, DecoderConfig, FaidRule};

/// k-subsets of `0..n` in colexicographic order.
#[derive(Clone, Debug)]
pub struct Colex {
    n: usize,
    cur: Vec<usize>,
    done: bool,
}

impl Colex {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, cur: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Colex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let k = self.cur.len();
        match (0..k).find(|&i| self.cur[i] + 1 < if i + 1 < k { self.cur[i + 1] } else { self.n }) {
            Some(i) => {
                self.cur[i] += 1;
                (0..i).for_each(|j| self.cur[j] = j);
            }
            None => self.done = true,
        }
        Some(out)
    }
}

#[derive(Clone, Debug)]
pub enum GuaranteeMode {
    /// Every pattern of weight 1 to t.
    Exhaustive,
    /// One pattern per orbit under cyclic shifts within circulant blocks,
    /// weighted by orbit size.
    Qc,
    /// The patterns of an error set.
    ErrorSet(ErrorSet),
}

impl GuaranteeMode {
    pub fn name(&self) -> &'static str {
        match self {
            GuaranteeMode::Exhaustive => "exhaustive",
            GuaranteeMode::Qc => "qc",
            GuaranteeMode::ErrorSet(_) => "eset",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GuaranteeOptions {
    pub first_failure: bool,
    /// Largest number of patterns of one weight to enumerate.
    pub ceiling: u128,
    pub chunk: usize,
}

impl Default for GuaranteeOptions {
    fn default() -> Self {
        Self { first_failure: false, ceiling: 100_000_000, chunk: 8192 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuaranteeVerdict {
    pub t: usize,
    pub mode: String,
    /// Patterns decoded.
    pub checked: u64,
    /// Patterns they stand for.
    pub represented: u128,
    /// Failing patterns in enumeration order.
    pub failures: Vec<ErrorPattern>,
    /// Patterns the failures stand for.
    pub failing_represented: u128,
}

impl GuaranteeVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Some(orbit size)` when `p` is the least of its cyclic shifts.
fn shift_canonical(p: &[usize], shifts: &[Vec<u32>]) -> Option<u128> {
    let mut stab = 0u128;
    let mut img = Vec::with_capacity(p.len());
    for s in shifts {
        img.clear();
        img.extend(p.iter().map(|&v| s[v] as usize));
        img.sort_unstable();
        match img.as_slice().cmp(p) {
            std::cmp::Ordering::Less => return None,
            std::cmp::Ordering::Equal => stab += 1,
            std::cmp::Ordering::Greater => {}
        }
    }
    Some(shifts.len() as u128 / stab)
}

fn shift_perms(g: &TannerGraph) -> Result<Vec<Vec<u32>>, HarnessError> {
    let qc = g.qc().ok_or(crate::codes::QcError::MissingQc)?;
    (0..qc.block)
        .map(|t| (0..g.n_var()).map(|v| qc.apply(VarTransform::sigma(t), v).map(|x| x as u32)).collect())
        .collect::<Result<_, _>>()
        .map_err(HarnessError::from)
}

/// Checks that the rules, each restarted with `n_iter` iterations, correct
/// every pattern the mode selects.
pub fn check_guarantee(
    g: &TannerGraph,
    rules: &[FaidRule],
    n_iter: usize,
    cfg: DecoderConfig,
    t: usize,
    mode: &GuaranteeMode,
    opts: GuaranteeOptions,
) -> Result<GuaranteeVerdict, HarnessError> {
    let proto = Decoder::new(g, cfg)?;
    let mut verdict = GuaranteeVerdict {
        t,
        mode: mode.name().to_string(),
        checked: 0,
        represented: 0,
        failures: Vec::new(),
        failing_represented: 0,
    };
    let shifts = match mode {
        GuaranteeMode::Qc => Some(shift_perms(g)?),
        _ => None,
    };
    let patterns: Box<dyn Iterator<Item = Vec<usize>>> = match mode {
        GuaranteeMode::ErrorSet(e) => {
            if let Some(p) = e.patterns.iter().find(|p| p.weight() == 0 || p.weight() > t) {
                return Err(HarnessError::PatternWeight { weight: p.weight(), t });
            }
            Box::new(e.patterns.iter().map(|p| p.support().to_vec()))
        }
        _ => {
            let largest = (1..=t).map(|w| binomial(g.n_var(), w)).max().unwrap_or(0);
            if largest > opts.ceiling {
                return Err(HarnessError::Ceiling { count: largest, ceiling: opts.ceiling });
            }
            Box::new((1..=t).flat_map(|w| Colex::new(g.n_var(), w)))
        }
    };
    let mut patterns = patterns.peekable();
    while patterns.peek().is_some() {
        let chunk: Vec<Vec<usize>> = patterns.by_ref().take(opts.chunk.max(1)).collect();
        let results = chunk
            .par_iter()
            .map_init(
                || proto.clone(),
                |d, p| -> Result<Option<(u128, bool)>, HarnessError> {
                    let weight = match &shifts {
                        Some(s) => match shift_canonical(p, s) {
                            Some(w) => w,
                            None => return Ok(None),
                        },
                        None => 1,
                    };
                    Ok(Some((weight, d.first_correcting(rules, p, n_iter)?.is_some())))
                },
            )
            .collect::<Result<Vec<_>, _>>()?;
        for (p, r) in chunk.into_iter().zip(results) {
            let Some((weight, ok)) = r else { continue };
            verdict.checked += 1;
            verdict.represented += weight;
            if !ok {
                verdict.failures.push(ErrorPattern::new(p));
                verdict.failing_represented += weight;
                if opts.first_failure {
                    return Ok(verdict);
                }
            }
        }
    }
    Ok(verdict)
}
