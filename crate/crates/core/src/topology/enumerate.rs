//! Exhaustive search for elementary trapping sets.
//!
//! A connected elementary set `T` is grown from a root variable by resolving
//! one odd (degree-1) check at a time: either a second member is attached to
//! it, or it is frozen as one of the `b` odd checks of `T`. The check to
//! resolve is always the open check with the fewest admissible partners, so
//! every connected `T` corresponds to exactly one branch of the search tree
//! and no duplicate elimination is needed. At most `max_b` checks can ever be
//! frozen, which bounds the search.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use super::cycles::{cycle_inventory, CycleInventory};
use super::ts::{TrappingSet, TsType};
use crate::codes::{SymmetryGroup, TannerGraph};

/// Default refusal threshold on `max_a` for codes of a few hundred bits.
pub const DEFAULT_MAX_A_CEILING: usize = 10;

#[derive(Clone, Debug)]
pub struct EnumConfig {
    pub max_a: usize,
    pub max_b: usize,
    /// Largest `max_a` accepted without `allow_large`.
    pub ceiling: usize,
    pub allow_large: bool,
    /// Use the code's symmetry group (when present) to search from one root
    /// per variable orbit and expand orbits afterwards.
    pub use_symmetry: bool,
    /// Keep disconnected unions of qualifying components.
    pub include_disconnected: bool,
    /// Drop sets in which some variable has fewer than two degree-2 checks
    /// (a pendant variable hanging off the rest of the set).
    pub leafless: bool,
}

impl EnumConfig {
    pub fn new(max_a: usize, max_b: usize) -> Self {
        Self {
            max_a,
            max_b,
            ceiling: DEFAULT_MAX_A_CEILING,
            allow_large: false,
            use_symmetry: true,
            include_disconnected: true,
            leafless: true,
        }
    }

    pub fn allow_large(mut self) -> Self {
        self.allow_large = true;
        self
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("max a = {max_a} exceeds the configured ceiling {ceiling}; set the override to proceed")]
    CeilingExceeded { max_a: usize, ceiling: usize },
    #[error("max a must be at least 1")]
    EmptySize,
}

struct Search<'g> {
    g: &'g TannerGraph,
    max_a: usize,
    max_b: usize,
    /// Variables below this index may not join (rooted-at-minimum mode).
    floor: usize,
    in_set: Vec<bool>,
    deg: Vec<u8>,
    frozen: Vec<bool>,
    members: Vec<usize>,
    n_frozen: usize,
    /// Resolved checks of members: degree two or frozen.
    n_open: usize,
    out: Vec<Vec<usize>>,
    cands: Vec<Vec<usize>>,
}

impl<'g> Search<'g> {
    fn new(g: &'g TannerGraph, max_a: usize, max_b: usize) -> Self {
        Self {
            g,
            max_a,
            max_b,
            floor: 0,
            in_set: vec![false; g.n_var()],
            deg: vec![0; g.n_chk()],
            frozen: vec![false; g.n_chk()],
            members: Vec::with_capacity(max_a),
            n_frozen: 0,
            n_open: 0,
            out: Vec::new(),
            cands: vec![Vec::with_capacity(8); max_a + max_b + 2],
        }
    }

    fn admissible(&self, w: usize) -> bool {
        w >= self.floor
            && !self.in_set[w]
            && self.g.var_neighbors(w).iter().all(|&c| match self.deg[c] {
                0 => true,
                1 => !self.frozen[c],
                _ => false,
            })
    }

    fn add(&mut self, w: usize) {
        self.in_set[w] = true;
        self.members.push(w);
        for &c in self.g.var_neighbors(w) {
            self.deg[c] += 1;
            if self.deg[c] == 1 {
                self.n_open += 1;
            } else {
                self.n_open -= 1;
            }
        }
    }

    fn remove(&mut self, w: usize) {
        self.in_set[w] = false;
        self.members.pop();
        for &c in self.g.var_neighbors(w) {
            if self.deg[c] == 1 {
                self.n_open -= 1;
            } else {
                self.n_open += 1;
            }
            self.deg[c] -= 1;
        }
    }

    /// Open check with the fewest admissible partners, written into
    /// `cands[depth]`.
    fn pick(&mut self, depth: usize) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_list = std::mem::take(&mut self.cands[depth]);
        let mut scratch = Vec::with_capacity(8);
        for i in 0..self.members.len() {
            let v = self.members[i];
            for &c in self.g.var_neighbors(v) {
                if self.deg[c] != 1 || self.frozen[c] {
                    continue;
                }
                scratch.clear();
                scratch.extend(self.g.chk_neighbors(c).iter().copied().filter(|&w| self.admissible(w)));
                let better = match best {
                    None => true,
                    Some((n, bc)) => scratch.len() < n || (scratch.len() == n && c < bc),
                };
                if better {
                    best = Some((scratch.len(), c));
                    std::mem::swap(&mut best_list, &mut scratch);
                    if best_list.is_empty() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(n, _)| n == 0) {
                break;
            }
        }
        self.cands[depth] = best_list;
        best.map(|(_, c)| c)
    }

    fn dfs(&mut self, depth: usize) {
        let open_unfrozen = self.n_open - self.n_frozen;
        if open_unfrozen == 0 {
            self.out.push(self.members.clone());
            return;
        }
        let room = self.max_a - self.members.len();
        if open_unfrozen > (self.max_b - self.n_frozen) + 3 * room {
            return;
        }
        let Some(c) = self.pick(depth) else { return };
        if room > 0 {
            let cands = std::mem::take(&mut self.cands[depth]);
            for &w in &cands {
                self.add(w);
                self.dfs(depth + 1);
                self.remove(w);
            }
            self.cands[depth] = cands;
        }
        if self.n_frozen < self.max_b {
            self.frozen[c] = true;
            self.n_frozen += 1;
            self.dfs(depth + 1);
            self.n_frozen -= 1;
            self.frozen[c] = false;
        }
    }

    /// All connected elementary sets containing `root` with every member
    /// `>= floor`.
    fn run(mut self, root: usize, floor: usize) -> Vec<Vec<usize>> {
        self.floor = floor;
        self.add(root);
        self.dfs(0);
        self.out
    }
}

/// Sum of variable degrees minus `b`, halved: the number of degree-2 checks.
fn even_checks(g: &TannerGraph, vset: &[usize], b: usize) -> usize {
    (vset.iter().map(|&v| g.var_neighbors(v).len()).sum::<usize>() - b) / 2
}

/// Connected, elementary, cycle-containing sets within the size bounds.
pub fn connected_sets(
    g: &TannerGraph,
    max_a: usize,
    max_b: usize,
    leafless: bool,
    group: Option<&SymmetryGroup>,
) -> Vec<Vec<usize>> {
    let keep = |s: &Vec<usize>| {
        let b = odd_checks(g, s);
        b <= max_b && even_checks(g, s, b) >= s.len() && (!leafless || min_even_degree(g, s) >= 2)
    };
    match group {
        Some(group) => {
            // One root per variable orbit; results are closed under the group
            // afterwards.
            let mut seen = vec![false; g.n_var()];
            let mut roots = Vec::new();
            for v in 0..g.n_var() {
                if !seen[v] {
                    roots.push(v);
                    for p in group.perms() {
                        seen[p[v] as usize] = true;
                    }
                }
            }
            let canon: HashSet<Vec<usize>> = roots
                .par_iter()
                .flat_map_iter(|&r| Search::new(g, max_a, max_b).run(r, 0))
                .filter(keep)
                .map(|s| group.canonical(&s))
                .collect();
            let mut reps: Vec<Vec<usize>> = canon.into_iter().collect();
            reps.sort();
            let mut all: Vec<Vec<usize>> = reps.par_iter().flat_map_iter(|r| group.orbit(r)).collect();
            all.sort();
            all
        }
        None => {
            let mut all: Vec<Vec<usize>> = (0..g.n_var())
                .into_par_iter()
                .flat_map_iter(|r| {
                    Search::new(g, max_a, max_b).run(r, r).into_iter().map(|mut s| {
                        s.sort_unstable();
                        s
                    })
                })
                .filter(keep)
                .collect();
            all.sort();
            all
        }
    }
}

/// Smallest number of degree-2 checks seen by any member.
fn min_even_degree(g: &TannerGraph, vset: &[usize]) -> usize {
    let deg = super::ts::induced_check_degrees(g, vset);
    vset.iter()
        .map(|&v| g.var_neighbors(v).iter().filter(|c| deg[c] == 2).count())
        .min()
        .unwrap_or(0)
}

fn odd_checks(g: &TannerGraph, vset: &[usize]) -> usize {
    super::ts::induced_check_degrees(g, vset).values().filter(|&&d| d % 2 == 1).count()
}

fn check_mask(g: &TannerGraph, vset: &[usize]) -> Vec<usize> {
    let mut cs: Vec<usize> = vset.iter().flat_map(|&v| g.var_neighbors(v).iter().copied()).collect();
    cs.sort_unstable();
    cs.dedup();
    cs
}

/// Unions of two or more check-disjoint connected components whose totals
/// stay within the bounds.
fn disconnected_unions(g: &TannerGraph, comps: &[Vec<usize>], max_a: usize, max_b: usize) -> Vec<Vec<usize>> {
    let info: Vec<(usize, usize, Vec<usize>)> =
        comps.iter().map(|s| (s.len(), odd_checks(g, s), check_mask(g, s))).collect();
    let min_a = info.iter().map(|i| i.0).min().unwrap_or(usize::MAX);
    let min_b = info.iter().map(|i| i.1).min().unwrap_or(usize::MAX);
    let mut out = Vec::new();
    // Components listed in increasing index order; the union must leave
    // room for at least one more smallest component.
    fn extend(
        start: usize,
        chosen: &mut Vec<usize>,
        a: usize,
        b: usize,
        info: &[(usize, usize, Vec<usize>)],
        comps: &[Vec<usize>],
        bounds: (usize, usize, usize, usize),
        out: &mut Vec<Vec<usize>>,
    ) {
        let (max_a, max_b, min_a, min_b) = bounds;
        if chosen.len() >= 2 {
            let mut u: Vec<usize> = chosen.iter().flat_map(|&i| comps[i].iter().copied()).collect();
            u.sort_unstable();
            out.push(u);
        }
        if a + min_a > max_a || b + min_b > max_b {
            return;
        }
        for j in start..info.len() {
            let (aj, bj, ref cj) = info[j];
            if a + aj > max_a || b + bj > max_b {
                continue;
            }
            let disjoint = chosen.iter().all(|&i| {
                let ci = &info[i].2;
                let (mut x, mut y) = (0, 0);
                while x < ci.len() && y < cj.len() {
                    match ci[x].cmp(&cj[y]) {
                        std::cmp::Ordering::Less => x += 1,
                        std::cmp::Ordering::Greater => y += 1,
                        std::cmp::Ordering::Equal => return false,
                    }
                }
                true
            });
            if disjoint {
                chosen.push(j);
                extend(j + 1, chosen, a + aj, b + bj, info, comps, bounds, out);
                chosen.pop();
            }
        }
    }
    if min_a.saturating_mul(2) > max_a || min_b.saturating_mul(2) > max_b {
        return out;
    }
    let mut chosen = Vec::new();
    extend(0, &mut chosen, 0, 0, &info, comps, (max_a, max_b, min_a, min_b), &mut out);
    out
}

/// Every elementary trapping set with `a <= max_a` and `b <= max_b` in which
/// each connected component contains a cycle. Sorted by `(a, b, vars)`.
pub fn enumerate_trapping_sets(g: &TannerGraph, cfg: &EnumConfig) -> Result<Vec<TrappingSet>, EnumError> {
    if cfg.max_a == 0 {
        return Err(EnumError::EmptySize);
    }
    if cfg.max_a > cfg.ceiling && !cfg.allow_large {
        return Err(EnumError::CeilingExceeded { max_a: cfg.max_a, ceiling: cfg.ceiling });
    }
    let group = if cfg.use_symmetry { SymmetryGroup::for_graph(g).ok() } else { None };
    let mut sets = connected_sets(g, cfg.max_a, cfg.max_b, cfg.leafless, group.as_ref());
    if cfg.include_disconnected {
        let unions = disconnected_unions(g, &sets, cfg.max_a, cfg.max_b);
        sets.extend(unions);
        sets.sort();
        sets.dedup();
    }
    Ok(classify_all(g, sets, group.as_ref()))
}

/// Attaches `(a, b)` and cycle inventories; inventories are computed once per
/// orbit when a symmetry group is available.
pub(crate) fn classify_all(g: &TannerGraph, sets: Vec<Vec<usize>>, group: Option<&SymmetryGroup>) -> Vec<TrappingSet> {
    let keys: Vec<Vec<usize>> = match group {
        Some(grp) => {
            let mut key_of: HashMap<Vec<usize>, usize> = HashMap::with_capacity(sets.len());
            let mut reps: Vec<Vec<usize>> = Vec::new();
            let mut keys = Vec::with_capacity(sets.len());
            for s in &sets {
                let idx = match key_of.get(s) {
                    Some(&i) => i,
                    None => {
                        let rep = grp.canonical(s);
                        let i = reps.len();
                        for img in grp.orbit(&rep) {
                            key_of.insert(img, i);
                        }
                        reps.push(rep);
                        i
                    }
                };
                keys.push(reps[idx].clone());
            }
            keys
        }
        None => sets.clone(),
    };
    let mut kinds: HashMap<Vec<usize>, Arc<TsType>> = HashMap::new();
    let mut out: Vec<TrappingSet> = sets
        .into_iter()
        .zip(keys)
        .map(|(s, key)| {
            let kind = kinds
                .entry(key)
                .or_insert_with_key(|k| Arc::new(classify_kind(g, k)))
                .clone();
            TrappingSet::new(s, kind)
        })
        .collect();
    out.sort_by(|x, y| (x.a(), x.b(), x.vars()).cmp(&(y.a(), y.b(), y.vars())));
    out
}

fn classify_kind(g: &TannerGraph, vset: &[usize]) -> TsType {
    let b = odd_checks(g, vset);
    let inventory: CycleInventory = cycle_inventory(g, vset, usize::MAX).expect("no ceiling");
    TsType::new(vset.len(), b, inventory)
}

/// Classifies an arbitrary variable set.
pub fn classify(g: &TannerGraph, vset: &[usize]) -> TrappingSet {
    let mut v = vset.to_vec();
    v.sort_unstable();
    v.dedup();
    let kind = Arc::new(classify_kind(g, &v));
    TrappingSet::new(v, kind)
}

/// Histogram keyed by `(a, b)`.
pub fn ab_histogram(sets: &[TrappingSet]) -> BTreeMap<(usize, usize), usize> {
    let mut h = BTreeMap::new();
    for s in sets {
        *h.entry((s.a(), s.b())).or_insert(0) += 1;
    }
    h
}
