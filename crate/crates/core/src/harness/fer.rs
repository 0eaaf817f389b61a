use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::HarnessError;
use crate::codes::TannerGraph;
use crate::diversity::DiversitySet;
use crate::faid::{Decoder, DecoderConfig, FaidRule};

/// The nested stages of a diversity set: stage `k` runs every rule added
/// at weight `k` or below.
pub fn dset_stages(dset: &DiversitySet, rules: &[FaidRule]) -> Vec<FerStage> {
    dset.stage_ends()
        .into_iter()
        .map(|(k, end)| FerStage { label: format!("t{k}"), rules: rules[..end].to_vec(), n_iter: dset.n_iter })
        .collect()
}

/// A rule sequence run with sequential restart on every frame.
#[derive(Clone, Debug)]
pub struct FerStage {
    pub label: String,
    pub rules: Vec<FaidRule>,
    pub n_iter: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct FerConfig {
    pub alpha: f64,
    pub max_frames: u64,
    /// Stop once stage `stop_stage` has this many frame errors.
    pub target_errors: u64,
    pub stop_stage: usize,
    pub seed: u64,
    pub workers: usize,
    /// Frames per work unit. Stopping is checked between units.
    pub batch: u64,
    /// Frames with at most this many errors count as corrected without
    /// decoding. Only sound below a verified guarantee.
    pub safe_weight: usize,
}

impl Default for FerConfig {
    fn default() -> Self {
        Self { alpha: 0.01, max_frames: 1_000_000, target_errors: 100, stop_stage: 0, seed: 1, workers: 1, batch: 4096, safe_weight: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FerPoint {
    pub alpha: f64,
    pub frames: u64,
    pub labels: Vec<String>,
    pub errors: Vec<u64>,
}

impl FerPoint {
    pub fn fer(&self, stage: usize) -> f64 {
        if self.frames == 0 {
            0.0
        } else {
            self.errors[stage] as f64 / self.frames as f64
        }
    }

    pub fn interval(&self, stage: usize) -> (f64, f64) {
        wilson_interval(self.errors[stage], self.frames)
    }
}

/// 95% Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let d = 1.0 + z * z / n;
    let c = (p + z * z / (2.0 * n)) / d;
    let h = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / d;
    let lo = if k == 0.0 { 0.0 } else { (c - h).max(0.0) };
    let hi = if k == n { 1.0 } else { (c + h).min(1.0) };
    (lo, hi)
}

/// Per-frame error sampler: the frame weight by inverse binomial CDF, then
/// a uniform support of that weight. Same law as independent flips.
#[derive(Clone, Debug)]
pub struct FrameSampler {
    n: usize,
    seed: u64,
    cdf: Vec<f64>,
}

impl FrameSampler {
    pub fn new(n: usize, alpha: f64, seed: u64) -> Self {
        let mut cdf = Vec::with_capacity(n + 1);
        let (mut pmf, mut acc) = ((1.0 - alpha).powi(n as i32), 0.0);
        for w in 0..=n {
            acc += pmf;
            cdf.push(acc);
            pmf *= (n - w) as f64 / (w + 1) as f64 * alpha / (1.0 - alpha);
        }
        *cdf.last_mut().unwrap() = f64::INFINITY;
        Self { n, seed, cdf }
    }

    /// Error positions of frame `index`, sorted; a function of `(seed, index)` only.
    pub fn frame(&self, index: u64, out: &mut Vec<usize>) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let u: f64 = rng.random();
        let w = self.cdf.partition_point(|&c| c <= u);
        out.clear();
        if w > 0 {
            out.extend(rand::seq::index::sample(&mut rng, self.n, w).iter());
            out.sort_unstable();
        }
    }
}

struct Worker<'g> {
    dec: Decoder<'g>,
    errs: Vec<usize>,
}

fn run_batch(w: &mut Worker, stages: &[FerStage], cfg: &FerConfig, frames: &FrameSampler, start: u64, end: u64) -> Result<Vec<u64>, HarnessError> {
    let mut fails = vec![0u64; stages.len()];
    for f in start..end {
        frames.frame(f, &mut w.errs);
        if w.errs.len() <= cfg.safe_weight {
            continue;
        }
        // a stage extending the previous one with the same budget only
        // has to run its extra rules on frames the previous one missed
        let mut prev: Option<(usize, bool)> = None;
        for (s, st) in stages.iter().enumerate() {
            let skip = match prev {
                Some((p, ok)) if extends(&stages[p], st) => {
                    if ok {
                        Some(true)
                    } else {
                        let from = stages[p].rules.len();
                        Some(w.dec.first_correcting(&st.rules[from..], &w.errs, st.n_iter)?.is_some())
                    }
                }
                _ => None,
            };
            let ok = match skip {
                Some(ok) => ok,
                None => w.dec.first_correcting(&st.rules, &w.errs, st.n_iter)?.is_some(),
            };
            if !ok {
                fails[s] += 1;
            }
            prev = Some((s, ok));
        }
    }
    Ok(fails)
}

fn extends(a: &FerStage, b: &FerStage) -> bool {
    a.n_iter == b.n_iter && a.rules.len() <= b.rules.len() && a.rules.iter().zip(&b.rules).all(|(x, y)| x == y)
}

/// Monte Carlo frame error rates of every stage over the same frames.
///
/// Frame `i` draws its errors from a ChaCha8 stream selected by `i`, and
/// the stopping rule is applied in frame order between batches, so results
/// do not depend on the number of workers.
pub fn simulate_fer(g: &TannerGraph, stages: &[FerStage], dcfg: DecoderConfig, cfg: &FerConfig) -> Result<FerPoint, HarnessError> {
    if stages.is_empty() {
        return Err(HarnessError::NoStages);
    }
    if cfg.stop_stage >= stages.len() {
        return Err(HarnessError::StopStage { stop: cfg.stop_stage, stages: stages.len() });
    }
    if !(cfg.alpha > 0.0 && cfg.alpha < 0.5) {
        return Err(HarnessError::Alpha(cfg.alpha));
    }
    if cfg.max_frames == 0 || cfg.target_errors == 0 || stages.iter().any(|s| s.n_iter == 0 || s.rules.is_empty()) {
        return Err(HarnessError::ZeroBudget);
    }
    let frames = FrameSampler::new(g.n_var(), cfg.alpha, cfg.seed);
    let proto = Decoder::new(g, dcfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let batch = cfg.batch.max(1);
    let round = batch * cfg.workers.max(1) as u64;
    let mut point = FerPoint {
        alpha: cfg.alpha,
        frames: 0,
        labels: stages.iter().map(|s| s.label.clone()).collect(),
        errors: vec![0; stages.len()],
    };
    let mut next = 0u64;
    'outer: while next < cfg.max_frames {
        let end = (next + round).min(cfg.max_frames);
        let units: Vec<(u64, u64)> = (next..end).step_by(batch as usize).map(|s| (s, (s + batch).min(end))).collect();
        let results = pool.install(|| {
            units
                .par_iter()
                .map_init(
                    || Worker { dec: proto.clone(), errs: Vec::new() },
                    |w, &(s, e)| run_batch(w, stages, cfg, &frames, s, e),
                )
                .collect::<Result<Vec<_>, _>>()
        })?;
        for ((s, e), fails) in units.iter().zip(results) {
            point.frames += e - s;
            point.errors.iter_mut().zip(fails).for_each(|(a, b)| *a += b);
            if point.errors[cfg.stop_stage] >= cfg.target_errors {
                break 'outer;
            }
        }
        next = end;
    }
    Ok(point)
}
