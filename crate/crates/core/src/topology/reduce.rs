use std::collections::{BTreeMap, HashSet};

use super::ts::TrappingSet;
use crate::codes::{QcError, SymmetryGroup, TannerGraph};

/// All sets of one type label, reduced to orbit representatives.
#[derive(Clone, Debug)]
pub struct TsClass {
    pub type_label: String,
    pub a: usize,
    pub b: usize,
    /// Smallest sorted member of each orbit, in increasing order.
    pub representatives: Vec<TrappingSet>,
    /// Orbit sizes, parallel to `representatives`.
    pub orbit_sizes: Vec<usize>,
    /// Number of input sets with this label.
    pub total_count: usize,
    /// Number of classes left after the block-cyclic shift alone.
    pub sigma_count: usize,
    /// Number of orbits under the full symmetry group.
    pub reduced_count: usize,
}

/// Partitions `sets` into symmetry orbits, grouped by type label and sorted
/// by `(a, b, label)`.
pub fn reduce_by_homomorphism(g: &TannerGraph, sets: &[TrappingSet]) -> Result<Vec<TsClass>, QcError> {
    let group = SymmetryGroup::for_graph(g)?;
    let block = g.qc().ok_or(QcError::MissingQc)?.block;
    Ok(reduce_with(&group, block, sets))
}

pub(crate) fn reduce_with(group: &SymmetryGroup, block: usize, sets: &[TrappingSet]) -> Vec<TsClass> {
    let mut seen: HashSet<&[usize]> = HashSet::with_capacity(sets.len());
    let present: HashSet<&[usize]> = sets.iter().map(|s| s.vars()).collect();
    let mut classes: BTreeMap<(usize, usize, String), TsClass> = BTreeMap::new();
    let mut order: Vec<&TrappingSet> = sets.iter().collect();
    order.sort_by(|x, y| x.vars().cmp(y.vars()));
    for ts in order {
        let entry = classes
            .entry((ts.a(), ts.b(), ts.type_label().to_string()))
            .or_insert_with(|| TsClass {
                type_label: ts.type_label().to_string(),
                a: ts.a(),
                b: ts.b(),
                representatives: Vec::new(),
                orbit_sizes: Vec::new(),
                total_count: 0,
                sigma_count: 0,
                reduced_count: 0,
            });
        entry.total_count += 1;
        if seen.contains(ts.vars()) {
            continue;
        }
        let orbit = group.orbit(ts.vars());
        for img in &orbit {
            if let Some(&p) = present.get(img.as_slice()) {
                seen.insert(p);
            }
        }
        // Translations form the first `block` group elements.
        let shifts: HashSet<Vec<usize>> = (0..block).map(|i| group.image(i, ts.vars())).collect();
        let rep = orbit.iter().next().expect("orbit contains the set itself").clone();
        entry.sigma_count += orbit.len() / shifts.len();
        entry.orbit_sizes.push(orbit.len());
        entry.representatives.push(TrappingSet::new(rep, ts.kind().clone()));
        entry.reduced_count += 1;
    }
    let mut out: Vec<TsClass> = classes.into_values().collect();
    for c in &mut out {
        let mut idx: Vec<usize> = (0..c.representatives.len()).collect();
        idx.sort_by(|&i, &j| c.representatives[i].vars().cmp(c.representatives[j].vars()));
        c.representatives = idx.iter().map(|&i| c.representatives[i].clone()).collect();
        c.orbit_sizes = idx.iter().map(|&i| c.orbit_sizes[i]).collect();
    }
    out
}

/// Sums over all classes sharing `(a, b)`: `(total, sigma, reduced)`.
pub fn ab_summary(classes: &[TsClass]) -> BTreeMap<(usize, usize), (usize, usize, usize)> {
    let mut m = BTreeMap::new();
    for c in classes {
        let e = m.entry((c.a, c.b)).or_insert((0, 0, 0));
        e.0 += c.total_count;
        e.1 += c.sigma_count;
        e.2 += c.reduced_count;
    }
    m
}
