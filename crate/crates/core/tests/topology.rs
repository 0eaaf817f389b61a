use std::collections::{BTreeMap, BTreeSet};

use faid_core::codes::{build_tanner_155, TannerGraph};
use faid_core::topology::{ab_histogram, cycle_inventory, enumerate_trapping_sets, CycleInventory, EnumConfig};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_graph(seed: u64, n_var: usize, n_chk: usize) -> TannerGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let adj = (0..n_var).map(|_| sample(&mut rng, n_chk, 3).into_vec()).collect();
    TannerGraph::from_var_adjacency(n_chk, adj).unwrap()
}

fn check_degrees(g: &TannerGraph, vset: &[usize]) -> BTreeMap<usize, usize> {
    let mut d = BTreeMap::new();
    for &v in vset {
        for &c in g.var_neighbors(v) {
            *d.entry(c).or_insert(0) += 1;
        }
    }
    d
}

/// Components of `vset` joined through degree-2 checks.
fn components(g: &TannerGraph, vset: &[usize], deg: &BTreeMap<usize, usize>) -> Vec<Vec<usize>> {
    let mut left: BTreeSet<usize> = vset.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&s) = left.iter().next() {
        left.remove(&s);
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &c in g.var_neighbors(v).iter().filter(|c| deg[c] == 2) {
                for &w in g.chk_neighbors(c) {
                    if left.remove(&w) {
                        comp.push(w);
                    }
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

/// Every qualifying subset by direct search.
fn brute_force(g: &TannerGraph, max_a: usize, max_b: usize, leafless: bool) -> BTreeSet<Vec<usize>> {
    let n = g.n_var();
    let mut out = BTreeSet::new();
    for mask in 1u32..1 << n {
        if mask.count_ones() as usize > max_a {
            continue;
        }
        let vset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let deg = check_degrees(g, &vset);
        if deg.values().any(|&d| d > 2) || deg.values().filter(|&&d| d == 1).count() > max_b {
            continue;
        }
        let even = |v: usize| g.var_neighbors(v).iter().filter(|c| deg[c] == 2).count();
        if leafless && vset.iter().any(|&v| even(v) < 2) {
            continue;
        }
        let cyclic = components(g, &vset, &deg).iter().all(|comp| {
            let edges: usize = comp.iter().map(|&v| even(v)).sum::<usize>() / 2;
            edges >= comp.len()
        });
        if cyclic {
            out.insert(vset);
        }
    }
    out
}

/// Single cycles among the elements of the cycle space of the subgraph.
fn cycles_by_cycle_space(g: &TannerGraph, vset: &[usize]) -> CycleInventory {
    let deg = check_degrees(g, vset);
    let checks: Vec<usize> = deg.iter().filter(|(_, &d)| d >= 2).map(|(&c, _)| c).collect();
    let node_of_chk = |c: usize| vset.len() + checks.iter().position(|&x| x == c).unwrap();
    let edges: Vec<(usize, usize)> = vset
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| g.var_neighbors(v).iter().filter(|c| deg[c] >= 2).map(move |&c| (i, c)))
        .map(|(i, c)| (i, node_of_chk(c)))
        .collect();
    let nodes = vset.len() + checks.len();
    // fundamental cycles from a spanning forest
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut tree = Vec::new();
    let mut chords = Vec::new();
    for (k, &(a, b)) in edges.iter().enumerate() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            chords.push(k);
        } else {
            parent[ra] = rb;
            tree.push(k);
        }
    }
    let tree_path = |from: usize, to: usize| -> Vec<usize> {
        // edge ids on the tree path, by search
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; nodes];
        let mut seen = vec![false; nodes];
        let mut queue = vec![from];
        seen[from] = true;
        while let Some(x) = queue.pop() {
            for &k in &tree {
                let (a, b) = edges[k];
                let y = if a == x { b } else if b == x { a } else { continue };
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, k));
                    queue.push(y);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while let Some((p, k)) = prev[cur] {
            path.push(k);
            cur = p;
        }
        path
    };
    let basis: Vec<Vec<bool>> = chords
        .iter()
        .map(|&k| {
            let mut v = vec![false; edges.len()];
            v[k] = true;
            tree_path(edges[k].0, edges[k].1).into_iter().for_each(|e| v[e] ^= true);
            v
        })
        .collect();
    let mut inv = CycleInventory::new();
    for mask in 1u64..1 << basis.len() {
        let mut sel = vec![false; edges.len()];
        for (_, b) in basis.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1) {
            sel.iter_mut().zip(b).for_each(|(s, x)| *s ^= x);
        }
        let used: Vec<usize> = (0..edges.len()).filter(|&k| sel[k]).collect();
        let mut d = vec![0; nodes];
        used.iter().for_each(|&k| {
            d[edges[k].0] += 1;
            d[edges[k].1] += 1;
        });
        if d.iter().any(|&x| x != 0 && x != 2) {
            continue;
        }
        // one cycle iff the used edges are connected
        let mut p: Vec<usize> = (0..nodes).collect();
        for &k in &used {
            let (ra, rb) = (find(&mut p, edges[k].0), find(&mut p, edges[k].1));
            p[ra] = rb;
        }
        let roots: BTreeSet<usize> = used.iter().map(|&k| find(&mut p, edges[k].0)).collect();
        if roots.len() == 1 {
            *inv.entry(used.len()).or_insert(0) += 1;
        }
    }
    inv
}

#[test]
fn tanner_five_four_contains_both_small_classes() {
    let sets = enumerate_trapping_sets(&build_tanner_155(), &EnumConfig::new(5, 4)).unwrap();
    let h = ab_histogram(&sets);
    assert_eq!(h[&(5, 3)], 155);
    assert_eq!(h[&(4, 4)], 465);
    assert_eq!(h.len(), 2);
}

#[test]
fn toy_twelve_variable_code() {
    let g = random_graph(12, 12, 8);
    for b in [3, 4] {
        for leafless in [true, false] {
            let mut cfg = EnumConfig::new(8, b);
            cfg.leafless = leafless;
            let got: BTreeSet<Vec<usize>> =
                enumerate_trapping_sets(&g, &cfg).unwrap().iter().map(|t| t.vars().to_vec()).collect();
            assert_eq!(got, brute_force(&g, 8, b, leafless), "b={b} leafless={leafless}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumeration_matches_brute_force(seed in any::<u64>(), n_var in 8usize..=16, n_chk in 6usize..=10, max_b in 0usize..=4, leafless in any::<bool>()) {
        let g = random_graph(seed, n_var, n_chk);
        let mut cfg = EnumConfig::new(7, max_b);
        cfg.leafless = leafless;
        let sets = enumerate_trapping_sets(&g, &cfg).unwrap();
        let got: BTreeSet<Vec<usize>> = sets.iter().map(|t| t.vars().to_vec()).collect();
        prop_assert_eq!(got.len(), sets.len());
        prop_assert_eq!(got, brute_force(&g, 7, max_b, leafless));
        for t in &sets {
            let deg = check_degrees(&g, t.vars());
            prop_assert_eq!(t.b(), deg.values().filter(|&&d| d == 1).count());
        }
    }

    #[test]
    fn cycle_counts_match_cycle_space(seed in any::<u64>(), n_var in 4usize..=8, n_chk in 4usize..=8) {
        let g = random_graph(seed, n_var, n_chk.max(3));
        let vset: Vec<usize> = (0..n_var).collect();
        let want = cycles_by_cycle_space(&g, &vset);
        prop_assert_eq!(cycle_inventory(&g, &vset, 14).unwrap(), want);
    }

    #[test]
    fn cycle_counts_ignore_labels(seed in any::<u64>(), n_var in 4usize..=8, n_chk in 4usize..=8) {
        let g = random_graph(seed, n_var, n_chk);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let vp = sample(&mut rng, n_var, n_var).into_vec();
        let cp = sample(&mut rng, n_chk, n_chk).into_vec();
        let mut adj = vec![Vec::new(); n_var];
        for v in 0..n_var {
            adj[vp[v]] = g.var_neighbors(v).iter().map(|&c| cp[c]).collect();
        }
        let h = TannerGraph::from_var_adjacency(n_chk, adj).unwrap();
        let all: Vec<usize> = (0..n_var).collect();
        prop_assert_eq!(cycle_inventory(&g, &all, 14).unwrap(), cycle_inventory(&h, &all, 14).unwrap());
    }
}
