use std::fmt;

use super::qc::QcDescriptor;

/// Bipartite variable/check adjacency of a binary LDPC code.
///
/// Both adjacency views are kept and are guaranteed to describe the same
/// edge set with no parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n_var: usize,
    n_chk: usize,
    var_adj: Vec<Vec<usize>>,
    chk_adj: Vec<Vec<usize>>,
    qc: Option<QcDescriptor>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("variable {var} references check {chk} but only {n_chk} checks exist")]
    CheckOutOfRange { var: usize, chk: usize, n_chk: usize },
    #[error("parallel edge between variable {var} and check {chk}")]
    ParallelEdge { var: usize, chk: usize },
}

impl TannerGraph {
    /// Builds a graph from per-variable check lists. Check lists are derived
    /// in increasing variable order.
    pub fn from_var_adjacency(n_chk: usize, var_adj: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut chk_adj = vec![Vec::new(); n_chk];
        for (v, checks) in var_adj.iter().enumerate() {
            for (i, &c) in checks.iter().enumerate() {
                if c >= n_chk {
                    return Err(GraphError::CheckOutOfRange { var: v, chk: c, n_chk });
                }
                if checks[..i].contains(&c) {
                    return Err(GraphError::ParallelEdge { var: v, chk: c });
                }
                chk_adj[c].push(v);
            }
        }
        Ok(Self {
            n_var: var_adj.len(),
            n_chk,
            var_adj,
            chk_adj,
            qc: None,
        })
    }

    /// Builds a graph from both adjacency views, which the caller guarantees
    /// to be mutually consistent.
    pub(crate) fn from_parts(var_adj: Vec<Vec<usize>>, chk_adj: Vec<Vec<usize>>) -> Self {
        Self {
            n_var: var_adj.len(),
            n_chk: chk_adj.len(),
            var_adj,
            chk_adj,
            qc: None,
        }
    }

    pub fn with_qc(mut self, qc: Option<QcDescriptor>) -> Self {
        self.qc = qc;
        self
    }

    pub fn n_var(&self) -> usize {
        self.n_var
    }

    pub fn n_chk(&self) -> usize {
        self.n_chk
    }

    pub fn n_edges(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    pub fn var_neighbors(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    pub fn chk_neighbors(&self, c: usize) -> &[usize] {
        &self.chk_adj[c]
    }

    pub fn var_adjacency(&self) -> &[Vec<usize>] {
        &self.var_adj
    }

    pub fn chk_adjacency(&self) -> &[Vec<usize>] {
        &self.chk_adj
    }

    pub fn qc(&self) -> Option<&QcDescriptor> {
        self.qc.as_ref()
    }

    /// Common variable degree, if the graph is variable-regular.
    pub fn var_degree(&self) -> Option<usize> {
        regular_degree(&self.var_adj)
    }

    /// Common check degree, if the graph is check-regular.
    pub fn chk_degree(&self) -> Option<usize> {
        regular_degree(&self.chk_adj)
    }

    /// Sorted `(degree, count)` pairs for variables and checks.
    pub fn degree_profile(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        (histogram(&self.var_adj), histogram(&self.chk_adj))
    }

    /// Parity of every check for the given hard-decision word.
    pub fn syndrome(&self, word: &[u8]) -> Vec<u8> {
        self.chk_adj
            .iter()
            .map(|vars| vars.iter().fold(0u8, |acc, &v| acc ^ (word[v] & 1)))
            .collect()
    }

    pub fn is_codeword(&self, word: &[u8]) -> bool {
        self.chk_adj
            .iter()
            .all(|vars| vars.iter().fold(0u8, |acc, &v| acc ^ (word[v] & 1)) == 0)
    }

    /// Dense parity-check rows packed into 64-bit words.
    pub fn dense_rows(&self) -> Vec<Vec<u64>> {
        let words = self.n_var.div_ceil(64);
        self.chk_adj
            .iter()
            .map(|vars| {
                let mut row = vec![0u64; words];
                for &v in vars {
                    row[v / 64] |= 1 << (v % 64);
                }
                row
            })
            .collect()
    }

    /// GF(2) rank of the parity-check matrix.
    pub fn rank(&self) -> usize {
        super::gf2::rank(self.dense_rows(), self.n_var)
    }

    /// Code dimension `N - rank(H)`.
    pub fn dimension(&self) -> usize {
        self.n_var - self.rank()
    }

    /// A basis of the code, one unpacked 0/1 word per dimension.
    pub fn codeword_basis(&self) -> Vec<Vec<u8>> {
        super::gf2::null_space(self.dense_rows(), self.n_var)
            .into_iter()
            .map(|x| (0..self.n_var).map(|i| ((x[i / 64] >> (i % 64)) & 1) as u8).collect())
            .collect()
    }

    /// Length of the shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        // Node ids: variables 0..n_var, checks n_var..n_var+n_chk.
        let total = self.n_var + self.n_chk;
        let neighbors = |u: usize| -> &[usize] {
            if u < self.n_var {
                &self.var_adj[u]
            } else {
                &self.chk_adj[u - self.n_var]
            }
        };
        let offset = |u: usize, w: usize| if u < self.n_var { w + self.n_var } else { w };
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..self.n_var {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in neighbors(u) {
                    let w = offset(u, w);
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

impl fmt::Debug for TannerGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TannerGraph")
            .field("n_var", &self.n_var)
            .field("n_chk", &self.n_chk)
            .field("n_edges", &self.n_edges())
            .field("qc", &self.qc)
            .finish()
    }
}

fn regular_degree(adj: &[Vec<usize>]) -> Option<usize> {
    let first = adj.first()?.len();
    adj.iter().all(|a| a.len() == first).then_some(first)
}

fn histogram(adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for a in adj {
        *counts.entry(a.len()).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}
