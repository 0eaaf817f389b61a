//! Quasi-cyclic Tanner array codes and their index symmetries.
//!
//! The parity-check matrix is a `d_v x d_c` array of `L x L` circulants; block
//! `(r, k)` has shift `alpha^k * beta^r mod L`, where `alpha` has
//! multiplicative order `d_c` and `beta` order `d_v` in GF(L).
//!
//! Shift convention: check `r*L + c` is connected to variable
//! `k*L + ((c + alpha^k beta^r) mod L)`. Variables are laid out
//! column-block-major, `i = k*L + l`.
//!
//! Three families of index maps preserve the induced topology of any variable
//! set:
//!
//! * `sigma(t)`: `(k, l) -> (k, l + t)`
//! * `pi(t)`: `(k, l) -> (k + t mod d_c, alpha^t l)`
//! * `rho(t)`: `(k, l) -> (k, beta^t l)`
//!
//! Together they generate a group of order `L * d_c * d_v` whose elements are
//! `(k, l) -> (k + u, alpha^u beta^r l + s)`.

use std::collections::BTreeSet;

use super::graph::TannerGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QcDescriptor {
    /// Circulant size `L` (prime).
    pub block: usize,
    /// Number of circulant column blocks (`d_c`).
    pub col_blocks: usize,
    /// Number of circulant row blocks (`d_v`).
    pub row_blocks: usize,
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QcError {
    #[error("circulant size {0} is not prime")]
    NotPrime(usize),
    #[error("no element of multiplicative order {order} exists in GF({block})")]
    NoElementOfOrder { order: usize, block: usize },
    #[error("graph carries no quasi-cyclic descriptor")]
    MissingQc,
    #[error("{kind} parameter {t} out of range 0..{limit}")]
    ParameterOutOfRange { kind: TransformKind, t: usize, limit: usize },
    #[error("variable {v} out of range for {n} variables")]
    VariableOutOfRange { v: usize, n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Sigma,
    Pi,
    Rho,
}

impl std::fmt::Display for TransformKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TransformKind::Sigma => "sigma",
            TransformKind::Pi => "pi",
            TransformKind::Rho => "rho",
        })
    }
}

/// One of the three generating index maps with its shift parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarTransform {
    pub kind: TransformKind,
    pub t: usize,
}

impl VarTransform {
    pub fn sigma(t: usize) -> Self {
        Self { kind: TransformKind::Sigma, t }
    }
    pub fn pi(t: usize) -> Self {
        Self { kind: TransformKind::Pi, t }
    }
    pub fn rho(t: usize) -> Self {
        Self { kind: TransformKind::Rho, t }
    }
}

fn pow_mod(base: usize, exp: usize, m: usize) -> usize {
    (0..exp).fold(1 % m, |acc, _| acc * base % m)
}

/// Multiplicative order of `x` modulo prime `p`.
pub fn multiplicative_order(x: usize, p: usize) -> Option<usize> {
    if x.is_multiple_of(p) {
        return None;
    }
    let mut acc = x % p;
    for order in 1..p {
        if acc == 1 {
            return Some(order);
        }
        acc = acc * x % p;
    }
    None
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest element of GF(p) with the given multiplicative order.
pub fn smallest_of_order(order: usize, p: usize) -> Option<usize> {
    (1..p).find(|&x| multiplicative_order(x, p) == Some(order))
}

impl QcDescriptor {
    /// Descriptor for a Tanner array code using the smallest elements of
    /// orders `d_c` and `d_v`.
    pub fn tanner(block: usize, row_blocks: usize, col_blocks: usize) -> Result<Self, QcError> {
        if !is_prime(block) {
            return Err(QcError::NotPrime(block));
        }
        let alpha = smallest_of_order(col_blocks, block)
            .ok_or(QcError::NoElementOfOrder { order: col_blocks, block })?;
        let beta = smallest_of_order(row_blocks, block)
            .ok_or(QcError::NoElementOfOrder { order: row_blocks, block })?;
        Ok(Self { block, col_blocks, row_blocks, alpha, beta })
    }

    pub fn n_var(&self) -> usize {
        self.block * self.col_blocks
    }

    pub fn n_chk(&self) -> usize {
        self.block * self.row_blocks
    }

    /// Circulant shift of block `(r, k)`.
    pub fn shift(&self, r: usize, k: usize) -> usize {
        pow_mod(self.alpha, k, self.block) * pow_mod(self.beta, r, self.block) % self.block
    }

    /// Builds the Tanner graph described by this descriptor.
    pub fn build(&self) -> TannerGraph {
        let l = self.block;
        let var_adj = (0..self.n_var())
            .map(|v| {
                let (k, li) = (v / l, v % l);
                (0..self.row_blocks)
                    .map(|r| r * l + (li + l - self.shift(r, k)) % l)
                    .collect()
            })
            .collect();
        let chk_adj = (0..self.n_chk())
            .map(|c| {
                let (r, ci) = (c / l, c % l);
                (0..self.col_blocks)
                    .map(|k| k * l + (ci + self.shift(r, k)) % l)
                    .collect()
            })
            .collect();
        TannerGraph::from_parts(var_adj, chk_adj).with_qc(Some(*self))
    }

    pub fn group_order(&self) -> usize {
        self.block * self.col_blocks * self.row_blocks
    }

    pub fn apply(&self, tr: VarTransform, v: usize) -> Result<usize, QcError> {
        let n = self.n_var();
        if v >= n {
            return Err(QcError::VariableOutOfRange { v, n });
        }
        let limit = match tr.kind {
            TransformKind::Sigma => self.block,
            TransformKind::Pi => self.col_blocks,
            TransformKind::Rho => self.row_blocks,
        };
        if tr.t >= limit {
            return Err(QcError::ParameterOutOfRange { kind: tr.kind, t: tr.t, limit });
        }
        let (l, k, li) = (self.block, v / self.block, v % self.block);
        Ok(match tr.kind {
            TransformKind::Sigma => k * l + (li + tr.t) % l,
            TransformKind::Pi => ((k + tr.t) % self.col_blocks) * l + pow_mod(self.alpha, tr.t, l) * li % l,
            TransformKind::Rho => k * l + pow_mod(self.beta, tr.t, l) * li % l,
        })
    }

    /// Every element of the symmetry group as a variable permutation table.
    ///
    /// Element `(u, r, s)` maps `(k, l)` to `(k + u, alpha^u beta^r l + s)`;
    /// elements are listed with `s` fastest, then `r`, then `u`, so index 0 is
    /// the identity.
    pub fn group(&self) -> Vec<Vec<u32>> {
        let l = self.block;
        let mut perms = Vec::with_capacity(self.group_order());
        for u in 0..self.col_blocks {
            for r in 0..self.row_blocks {
                let mult = pow_mod(self.alpha, u, l) * pow_mod(self.beta, r, l) % l;
                for s in 0..l {
                    perms.push(
                        (0..self.n_var())
                            .map(|v| {
                                let (k, li) = (v / l, v % l);
                                (((k + u) % self.col_blocks) * l + (mult * li + s) % l) as u32
                            })
                            .collect(),
                    );
                }
            }
        }
        perms
    }
}

/// Precomputed symmetry group for repeated orbit and canonical-form queries.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    perms: Vec<Vec<u32>>,
}

impl SymmetryGroup {
    pub fn new(qc: &QcDescriptor) -> Self {
        Self { perms: qc.group() }
    }

    pub fn for_graph(g: &TannerGraph) -> Result<Self, QcError> {
        g.qc().map(Self::new).ok_or(QcError::MissingQc)
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<u32>] {
        &self.perms
    }

    /// Sorted image of `vset` under group element `idx`.
    pub fn image(&self, idx: usize, vset: &[usize]) -> Vec<usize> {
        let p = &self.perms[idx];
        let mut out: Vec<usize> = vset.iter().map(|&v| p[v] as usize).collect();
        out.sort_unstable();
        out
    }

    /// All distinct sorted images of `vset`.
    pub fn orbit(&self, vset: &[usize]) -> BTreeSet<Vec<usize>> {
        (0..self.perms.len()).map(|i| self.image(i, vset)).collect()
    }

    /// Lexicographically smallest sorted image of `vset`.
    pub fn canonical(&self, vset: &[usize]) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        let mut buf = Vec::with_capacity(vset.len());
        for p in &self.perms {
            buf.clear();
            buf.extend(vset.iter().map(|&v| p[v] as usize));
            buf.sort_unstable();
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        best.unwrap_or_default()
    }
}

impl TannerGraph {
    pub fn apply_transform(&self, tr: VarTransform, v: usize) -> Result<usize, QcError> {
        self.qc().ok_or(QcError::MissingQc)?.apply(tr, v)
    }

    /// All distinct images of `vset` under the symmetry group.
    pub fn orbit(&self, vset: &[usize]) -> Result<BTreeSet<Vec<usize>>, QcError> {
        Ok(SymmetryGroup::for_graph(self)?.orbit(vset))
    }

    /// Re-derives the quasi-cyclic descriptor when the graph's edge set is
    /// exactly a Tanner array code (as happens after an alist round trip).
    pub fn with_inferred_qc(self) -> Self {
        if self.qc().is_some() {
            return self;
        }
        let (Some(dv), Some(dc)) = (self.var_degree(), self.chk_degree()) else {
            return self;
        };
        if dc == 0 || !self.n_var().is_multiple_of(dc) {
            return self;
        }
        let block = self.n_var() / dc;
        if self.n_chk() != block * dv {
            return self;
        }
        match QcDescriptor::tanner(block, dv, dc) {
            Ok(qc) if same_edges(&qc.build(), &self) => self.with_qc(Some(qc)),
            _ => self,
        }
    }
}

fn same_edges(a: &TannerGraph, b: &TannerGraph) -> bool {
    a.n_var() == b.n_var()
        && a.n_chk() == b.n_chk()
        && a.var_adjacency().iter().zip(b.var_adjacency()).all(|(x, y)| {
            let mut x = x.clone();
            let mut y = y.clone();
            x.sort_unstable();
            y.sort_unstable();
            x == y
        })
}

/// The (155,64) Tanner code: `L = 31`, `d_v = 3`, `d_c = 5`, `alpha = 2`, `beta = 5`.
pub fn build_tanner_155() -> TannerGraph {
    QcDescriptor::tanner(31, 3, 5)
        .expect("GF(31) has elements of order 3 and 5")
        .build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_generators_by_brute_force() {
        // oracle: direct powering of every candidate 1..30
        let order = |x: usize| (1..=30).find(|&e| pow_mod(x, e, 31) == 1).unwrap();
        let alpha = (1..31).find(|&x| order(x) == 5).unwrap();
        let beta = (1..31).find(|&x| order(x) == 3).unwrap();
        assert_eq!((alpha, beta), (2, 5));
        let qc = QcDescriptor::tanner(31, 3, 5).unwrap();
        assert_eq!((qc.alpha, qc.beta), (alpha, beta));
    }

    #[test]
    fn transform_examples() {
        let qc = QcDescriptor::tanner(31, 3, 5).unwrap();
        assert_eq!(qc.apply(VarTransform::sigma(1), 30).unwrap(), 0);
        for t in 0..3 {
            assert_eq!(qc.apply(VarTransform::rho(t), 0).unwrap(), 0);
        }
        assert_eq!(qc.apply(VarTransform::pi(1), 0).unwrap(), 31);
    }

    #[test]
    fn transform_parameter_checks() {
        let qc = QcDescriptor::tanner(31, 3, 5).unwrap();
        assert!(matches!(
            qc.apply(VarTransform::pi(5), 0),
            Err(QcError::ParameterOutOfRange { limit: 5, .. })
        ));
        assert!(matches!(qc.apply(VarTransform::sigma(0), 155), Err(QcError::VariableOutOfRange { .. })));
        let bare = TannerGraph::from_var_adjacency(1, vec![vec![0]]).unwrap();
        assert_eq!(bare.apply_transform(VarTransform::sigma(0), 0), Err(QcError::MissingQc));
    }

    #[test]
    fn transforms_are_bijections() {
        let qc = QcDescriptor::tanner(31, 3, 5).unwrap();
        let all = (0..31).map(VarTransform::sigma).chain((0..5).map(VarTransform::pi)).chain((0..3).map(VarTransform::rho));
        for tr in all {
            let img: BTreeSet<usize> = (0..155).map(|v| qc.apply(tr, v).unwrap()).collect();
            assert_eq!(img.len(), 155, "{tr:?}");
        }
    }

    #[test]
    fn group_elements_are_automorphisms() {
        let g = build_tanner_155();
        let group = SymmetryGroup::for_graph(&g).unwrap();
        assert_eq!(group.order(), 465);
        // Each check's variable set must map onto some check's variable set.
        let checks: BTreeSet<Vec<usize>> = g
            .chk_adjacency()
            .iter()
            .map(|vs| {
                let mut v = vs.clone();
                v.sort_unstable();
                v
            })
            .collect();
        for i in 0..group.order() {
            for vs in &checks {
                assert!(checks.contains(&group.image(i, vs)));
            }
        }
    }

    #[test]
    fn inferred_qc_survives_stripping() {
        let g = build_tanner_155();
        let bare = g.clone().with_qc(None);
        assert_eq!(bare.with_inferred_qc(), g);
    }
}
