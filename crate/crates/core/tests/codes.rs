use std::collections::HashSet;

use faid_core::codes::{build_tanner_155, parse_alist, serialize_alist, SymmetryGroup, TannerGraph, VarTransform};
use faid_core::topology::cycle_inventory;
use proptest::prelude::*;

fn tanner() -> &'static TannerGraph {
    static G: std::sync::OnceLock<TannerGraph> = std::sync::OnceLock::new();
    G.get_or_init(build_tanner_155)
}

fn group() -> &'static SymmetryGroup {
    static S: std::sync::OnceLock<SymmetryGroup> = std::sync::OnceLock::new();
    S.get_or_init(|| SymmetryGroup::for_graph(tanner()).unwrap())
}

fn all_transforms() -> Vec<VarTransform> {
    (0..31)
        .map(VarTransform::sigma)
        .chain((0..5).map(VarTransform::pi))
        .chain((0..3).map(VarTransform::rho))
        .collect()
}

fn apply(tr: VarTransform, vset: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = vset.iter().map(|&v| tanner().apply_transform(tr, v).unwrap()).collect();
    out.sort_unstable();
    out
}

/// Null space of a dense GF(2) matrix given as rows of bits.
fn null_space(rows: &[Vec<u8>], n: usize) -> Vec<Vec<u8>> {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] == 1) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] == 1 {
                let pr = m[r].clone();
                m[i].iter_mut().zip(&pr).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![0u8; n];
            x[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = m[i][free];
            }
            x
        })
        .collect()
}

#[test]
fn construction_is_deterministic() {
    let a = build_tanner_155();
    let b = build_tanner_155();
    assert!(a == b);
    assert_eq!(a.var_adjacency(), b.var_adjacency());
}

#[test]
fn alist_round_trip_of_tanner() {
    let g = tanner();
    let back = parse_alist(&serialize_alist(g)).unwrap().with_inferred_qc();
    assert!(back == *g);
    assert_eq!(back.qc(), g.qc());
}

#[test]
fn five_three_orbit_has_155_members() {
    let orbit = group().orbit(&[0, 2, 12, 77, 139]);
    assert_eq!(orbit.len(), 155);
    for s in &orbit {
        assert_eq!(cycle_inventory(tanner(), s, 14).unwrap(), cycle_inventory(tanner(), &[0, 2, 12, 77, 139], 14).unwrap());
    }
}

#[test]
fn group_is_closed_under_composition() {
    let perms: HashSet<&Vec<u32>> = group().perms().iter().collect();
    assert_eq!(perms.len(), 465);
    let ps = group().perms();
    for a in ps.iter().step_by(7) {
        for b in ps.iter().step_by(11) {
            let ab: Vec<u32> = b.iter().map(|&x| a[x as usize]).collect();
            assert!(perms.contains(&ab));
        }
    }
}

#[test]
fn weight_twenty_codeword_with_orbit_93() {
    // Orbits of size 93 have a stabilizer of order 5, so some member is
    // fixed by pi(1); search the pi-invariant codewords.
    let g = tanner();
    let pi = |v: usize| g.apply_transform(VarTransform::pi(1), v).unwrap();
    let mut orbit_of = vec![usize::MAX; 155];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for v in 0..155 {
        if orbit_of[v] == usize::MAX {
            let mut o = vec![v];
            let mut w = pi(v);
            while w != v {
                o.push(w);
                w = pi(w);
            }
            o.iter().for_each(|&x| orbit_of[x] = orbits.len());
            orbits.push(o);
        }
    }
    let rows: Vec<Vec<u8>> = g
        .chk_adjacency()
        .iter()
        .map(|vars| {
            let mut r = vec![0u8; orbits.len()];
            vars.iter().for_each(|&v| r[orbit_of[v]] ^= 1);
            r
        })
        .collect();
    let basis = null_space(&rows, orbits.len());
    assert!(basis.len() <= 16);
    let mut found = None;
    for mask in 1u32..1 << basis.len() {
        let mut x = vec![0u8; orbits.len()];
        for (_, b) in basis.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1) {
            x.iter_mut().zip(b).for_each(|(a, c)| *a ^= c);
        }
        let mut support: Vec<usize> = (0..orbits.len()).filter(|&o| x[o] == 1).flat_map(|o| orbits[o].clone()).collect();
        support.sort_unstable();
        if support.len() == 20 {
            found = Some(support);
            break;
        }
    }
    let cw = found.expect("a pi-invariant weight-20 codeword");
    let mut word = vec![0u8; 155];
    cw.iter().for_each(|&v| word[v] = 1);
    assert!(g.is_codeword(&word));
    assert_eq!(group().orbit(&cw).len(), 93);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_size_divides_group_order(vset in prop::collection::btree_set(0usize..155, 1..8)) {
        let v: Vec<usize> = vset.into_iter().collect();
        prop_assert_eq!(465 % group().orbit(&v).len(), 0);
    }

    #[test]
    fn transforms_map_codewords_to_codewords(mask in prop::collection::vec(any::<bool>(), 64), t in 0usize..39) {
        static BASIS: std::sync::OnceLock<Vec<Vec<u8>>> = std::sync::OnceLock::new();
        let basis = BASIS.get_or_init(|| tanner().codeword_basis());
        let mut word = [0u8; 155];
        for (b, _) in basis.iter().zip(&mask).filter(|(_, &m)| m) {
            word.iter_mut().zip(b).for_each(|(w, x)| *w ^= x);
        }
        let support: Vec<usize> = (0..155).filter(|&i| word[i] == 1).collect();
        let img = apply(all_transforms()[t], &support);
        let mut w2 = vec![0u8; 155];
        img.iter().for_each(|&v| w2[v] = 1);
        prop_assert!(tanner().is_codeword(&w2));
    }

    #[test]
    fn transforms_preserve_cycle_inventories(start in 0usize..155, steps in prop::collection::vec(0usize..3, 4..7), t in 0usize..39) {
        // a connected walk through the graph
        let g = tanner();
        let mut vset = vec![start];
        let mut cur = start;
        for s in steps {
            let c = g.var_neighbors(cur)[s];
            let nb = g.chk_neighbors(c);
            cur = nb[(cur + s + 1) % nb.len()];
            if !vset.contains(&cur) {
                vset.push(cur);
            }
        }
        vset.sort_unstable();
        let img = apply(all_transforms()[t], &vset);
        prop_assert_eq!(cycle_inventory(g, &vset, 14).unwrap(), cycle_inventory(g, &img, 14).unwrap());
    }
}
