use super::rule::{ChannelValue, FaidRule};
use crate::codes::TannerGraph;

/// How a zero total at the decision step is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// Keep the received bit.
    #[default]
    Channel,
    Zero,
    One,
}

impl std::str::FromStr for TieBreak {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "channel" => Ok(Self::Channel),
            "zero" => Ok(Self::Zero),
            "one" => Ok(Self::One),
            _ => Err(format!("unknown tie-break {s:?} (channel, zero, one)")),
        }
    }
}

impl std::fmt::Display for TieBreak {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Channel => "channel",
            Self::Zero => "zero",
            Self::One => "one",
        })
    }
}

/// Decision-step parameters: the bit estimate is the sign of the sum of all
/// incoming check messages plus `omega` times the channel sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DecoderConfig {
    pub omega: i32,
    pub tie: TieBreak,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self { omega: 1, tie: TieBreak::Channel }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// The estimate satisfies every check.
    pub converged: bool,
    /// Iterations run; 0 when the received word was already a codeword.
    pub iterations_used: usize,
    pub estimate: Vec<u8>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("variable {var} has degree {degree}; the decoder needs column weight 3")]
    Degree { var: usize, degree: usize },
    #[error("received word has length {found}, code length is {expected}")]
    Length { expected: usize, found: usize },
    #[error("error position {0} is outside the code")]
    Position(usize),
}

/// Flooding-schedule FAID decoder with reusable message buffers.
///
/// Edges are numbered variable-major: edge `3v + i` joins variable `v` to
/// its `i`-th check. One decoder per worker; it is cheap to clone.
#[derive(Clone, Debug)]
pub struct Decoder<'g> {
    g: &'g TannerGraph,
    cfg: DecoderConfig,
    chk_ptr: Vec<u32>,
    chk_edges: Vec<u32>,
    c2v: Vec<i8>,
    v2c: Vec<i8>,
    /// Channel sign per variable, +1 or -1.
    y: Vec<i8>,
    hard: Vec<u8>,
    minus: Vec<i8>,
    plus: Vec<i8>,
    n_levels: usize,
    offset: i8,
}

impl<'g> Decoder<'g> {
    pub fn new(g: &'g TannerGraph, cfg: DecoderConfig) -> Result<Self, DecodeError> {
        if let Some((var, adj)) = g.var_adjacency().iter().enumerate().find(|(_, a)| a.len() != 3) {
            return Err(DecodeError::Degree { var, degree: adj.len() });
        }
        let mut chk_ptr = vec![0u32; g.n_chk() + 1];
        for c in 0..g.n_chk() {
            chk_ptr[c + 1] = chk_ptr[c] + g.chk_neighbors(c).len() as u32;
        }
        let mut fill = chk_ptr.clone();
        let mut chk_edges = vec![0u32; g.n_edges()];
        for v in 0..g.n_var() {
            for (i, &c) in g.var_neighbors(v).iter().enumerate() {
                chk_edges[fill[c] as usize] = (3 * v + i) as u32;
                fill[c] += 1;
            }
        }
        let n = g.n_var();
        Ok(Self {
            g,
            cfg,
            chk_ptr,
            chk_edges,
            c2v: vec![0; 3 * n],
            v2c: vec![0; 3 * n],
            y: vec![1; n],
            hard: vec![0; n],
            minus: Vec::new(),
            plus: Vec::new(),
            n_levels: 0,
            offset: 0,
        })
    }

    pub fn config(&self) -> DecoderConfig {
        self.cfg
    }

    pub fn graph(&self) -> &'g TannerGraph {
        self.g
    }

    fn load(&mut self, rule: &FaidRule) {
        let n = rule.levels();
        if self.n_levels == n && self.minus == rule.table() {
            return;
        }
        self.n_levels = n;
        self.offset = rule.s() as i8;
        self.minus = rule.table().to_vec();
        self.plus = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                -rule.entry(n - 1 - i, n - 1 - j)
            })
            .collect();
    }

    /// Decodes a received word of channel values.
    pub fn decode(&mut self, rule: &FaidRule, y: &[ChannelValue], n_iter: usize) -> Result<DecodeOutcome, DecodeError> {
        if y.len() != self.g.n_var() {
            return Err(DecodeError::Length { expected: self.g.n_var(), found: y.len() });
        }
        for (d, v) in self.y.iter_mut().zip(y) {
            *d = v.sign();
        }
        Ok(self.finish(rule, n_iter))
    }

    /// Decodes a received hard-decision word.
    pub fn decode_bits(&mut self, rule: &FaidRule, word: &[u8], n_iter: usize) -> Result<DecodeOutcome, DecodeError> {
        if word.len() != self.g.n_var() {
            return Err(DecodeError::Length { expected: self.g.n_var(), found: word.len() });
        }
        for (d, &b) in self.y.iter_mut().zip(word) {
            *d = if b & 1 == 0 { 1 } else { -1 };
        }
        Ok(self.finish(rule, n_iter))
    }

    fn finish(&mut self, rule: &FaidRule, n_iter: usize) -> DecodeOutcome {
        let used = self.run(rule, n_iter);
        DecodeOutcome {
            converged: used.is_some(),
            iterations_used: used.unwrap_or(n_iter),
            estimate: self.hard.clone(),
        }
    }

    fn set_errors(&mut self, errors: &[usize]) -> Result<(), DecodeError> {
        self.y.fill(1);
        for &e in errors {
            *self.y.get_mut(e).ok_or(DecodeError::Position(e))? = -1;
        }
        Ok(())
    }

    /// Whether the all-zero codeword with `errors` flipped is decoded back to
    /// the all-zero word within `n_iter` iterations.
    pub fn corrects(&mut self, rule: &FaidRule, errors: &[usize], n_iter: usize) -> Result<bool, DecodeError> {
        self.set_errors(errors)?;
        Ok(self.run(rule, n_iter).is_some() && self.hard.iter().all(|&b| b == 0))
    }

    /// Runs the rules one after another, restarting from scratch each time,
    /// and returns the index of the first that corrects `errors`.
    pub fn first_correcting(
        &mut self,
        rules: &[FaidRule],
        errors: &[usize],
        n_iter: usize,
    ) -> Result<Option<usize>, DecodeError> {
        self.set_errors(errors)?;
        for (i, rule) in rules.iter().enumerate() {
            if self.run(rule, n_iter).is_some() && self.hard.iter().all(|&b| b == 0) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Core loop on `self.y`. Returns the iteration at which the syndrome
    /// became zero.
    fn run(&mut self, rule: &FaidRule, n_iter: usize) -> Option<usize> {
        self.load(rule);
        for (h, &s) in self.hard.iter_mut().zip(&self.y) {
            *h = (s < 0) as u8;
        }
        if self.syndrome_zero() {
            return Some(0);
        }
        self.c2v.fill(0);
        for it in 1..=n_iter {
            self.variable_update();
            self.check_update();
            self.decide();
            if self.syndrome_zero() {
                return Some(it);
            }
        }
        None
    }

    fn variable_update(&mut self) {
        let n = self.n_levels;
        let o = self.offset;
        let idx = |m: i8| (m + o) as usize;
        for ((y, inc), out) in self.y.iter().zip(self.c2v.chunks_exact(3)).zip(self.v2c.chunks_exact_mut(3)) {
            let t = if *y < 0 { &self.minus } else { &self.plus };
            let (a, b, c) = (idx(inc[0]), idx(inc[1]), idx(inc[2]));
            out[0] = t[b * n + c];
            out[1] = t[a * n + c];
            out[2] = t[a * n + b];
        }
    }

    fn check_update(&mut self) {
        for c in 0..self.chk_ptr.len() - 1 {
            let edges = &self.chk_edges[self.chk_ptr[c] as usize..self.chk_ptr[c + 1] as usize];
            let mut neg = false;
            let (mut min1, mut min2, mut at) = (i8::MAX, i8::MAX, usize::MAX);
            for (k, &e) in edges.iter().enumerate() {
                let m = self.v2c[e as usize];
                neg ^= m < 0;
                let mag = m.abs();
                if mag < min1 {
                    min2 = min1;
                    min1 = mag;
                    at = k;
                } else if mag < min2 {
                    min2 = mag;
                }
            }
            for (k, &e) in edges.iter().enumerate() {
                let m = self.v2c[e as usize];
                let mag = if k == at { min2 } else { min1 };
                let mag = if mag == i8::MAX { 0 } else { mag };
                self.c2v[e as usize] = if neg ^ (m < 0) { -mag } else { mag };
            }
        }
    }

    fn decide(&mut self) {
        let w = self.cfg.omega;
        for ((h, y), inc) in self.hard.iter_mut().zip(&self.y).zip(self.c2v.chunks_exact(3)) {
            let total = inc[0] as i32 + inc[1] as i32 + inc[2] as i32 + w * *y as i32;
            *h = match total.cmp(&0) {
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Greater => 0,
                std::cmp::Ordering::Equal => match self.cfg.tie {
                    TieBreak::Channel => (*y < 0) as u8,
                    TieBreak::Zero => 0,
                    TieBreak::One => 1,
                },
            };
        }
    }

    fn syndrome_zero(&self) -> bool {
        (0..self.chk_ptr.len() - 1).all(|c| {
            self.chk_edges[self.chk_ptr[c] as usize..self.chk_ptr[c + 1] as usize]
                .iter()
                .fold(0u8, |acc, &e| acc ^ self.hard[e as usize / 3])
                == 0
        })
    }
}
