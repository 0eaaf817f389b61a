use std::collections::BTreeMap;

use crate::codes::TannerGraph;

/// Counts of simple cycles keyed by cycle length in edges.
pub type CycleInventory = BTreeMap<usize, usize>;

/// Default ceiling on the number of variables handed to [`cycle_inventory`].
pub const DEFAULT_CYCLE_CEILING: usize = 14;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cycle inventory requested for {size} variables, ceiling is {ceiling}")]
pub struct CeilingExceeded {
    pub size: usize,
    pub ceiling: usize,
}

/// Induced bipartite subgraph restricted to checks touching at least two
/// members (degree-1 checks cannot lie on a cycle).
struct Induced {
    adj: Vec<Vec<usize>>,
}

impl Induced {
    fn new(g: &TannerGraph, vset: &[usize]) -> Self {
        let mut local_chk: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &v) in vset.iter().enumerate() {
            for &c in g.var_neighbors(v) {
                local_chk.entry(c).or_default().push(i);
            }
        }
        let n = vset.len();
        let mut adj = vec![Vec::new(); n];
        for vars in local_chk.values().filter(|vs| vs.len() >= 2) {
            let id = adj.len();
            adj.push(vars.clone());
            for &i in vars {
                adj[i].push(id);
            }
        }
        Self { adj }
    }
}

/// Counts every simple cycle of the subgraph induced by `vset`.
///
/// Each cycle is enumerated once from its smallest node, walking only through
/// larger nodes; the two traversal directions are folded by halving.
pub fn cycle_inventory(g: &TannerGraph, vset: &[usize], ceiling: usize) -> Result<CycleInventory, CeilingExceeded> {
    if vset.len() > ceiling {
        return Err(CeilingExceeded { size: vset.len(), ceiling });
    }
    let sub = Induced::new(g, vset);
    let n = sub.adj.len();
    let mut twice = vec![0usize; n + 1];
    let mut on_path = vec![false; n];
    for start in 0..n {
        on_path[start] = true;
        walk(&sub.adj, start, start, 1, &mut on_path, &mut twice);
        on_path[start] = false;
    }
    Ok(twice
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(len, &c)| (len, c / 2))
        .collect())
}

fn walk(adj: &[Vec<usize>], start: usize, node: usize, len: usize, on_path: &mut [bool], twice: &mut [usize]) {
    for &next in &adj[node] {
        if next == start && len >= 4 {
            twice[len] += 1;
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            walk(adj, start, next, len + 1, on_path, twice);
            on_path[next] = false;
        }
    }
}

/// Canonical `(a,b;8^g·10^g·…)` label.
pub fn type_label(a: usize, b: usize, inventory: &CycleInventory) -> String {
    let cycles: Vec<String> = inventory.iter().map(|(len, g)| format!("{len}^{g}")).collect();
    format!("({a},{b};{})", cycles.join("·"))
}
