#![allow(dead_code)]

use mpkit_core::groupoid::FiniteGroupoid;
use mpkit_core::groups::{cyclic, dihedral};

/// Small groupoids with several objects and nontrivial vertex groups.
pub fn zoo() -> Vec<FiniteGroupoid> {
    let c2 = cyclic(2);
    vec![
        cyclic(4),
        dihedral(3),
        c2.product(&c2),
        FiniteGroupoid::pair(3),
        FiniteGroupoid::pair(2).product(&c2),
        cyclic(3).disjoint_union(&FiniteGroupoid::pair(2)),
    ]
}

/// The same groupoid with arrow `a` renamed `perm[a]`.
pub fn relabel(g: &FiniteGroupoid, perm: &[usize]) -> FiniteGroupoid {
    let n = g.n_arrows();
    let mut inv = vec![0; n];
    for (a, &b) in perm.iter().enumerate() {
        inv[b] = a;
    }
    FiniteGroupoid::from_fn(
        g.n_objects(),
        (0..n).map(|b| g.src(inv[b])).collect(),
        (0..n).map(|b| g.tgt(inv[b])).collect(),
        (0..g.n_objects()).map(|p| perm[g.identity(p)]).collect(),
        |a, b| perm[g.mul(inv[a], inv[b])],
    )
}

/// Independent check of the groupoid axioms straight from the tables.
pub fn brute_force_is_groupoid(g: &FiniteGroupoid) -> bool {
    let n = g.n_arrows();
    let ok_compose = (0..n).all(|a| {
        (0..n).all(|b| match g.compose(a, b) {
            Some(c) => g.tgt(a) == g.src(b) && g.src(c) == g.src(a) && g.tgt(c) == g.tgt(b),
            None => g.tgt(a) != g.src(b),
        })
    });
    if !ok_compose {
        return false;
    }
    let assoc = (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| match (g.compose(a, b), g.compose(b, c)) {
                (Some(ab), Some(bc)) => g.compose(ab, c) == g.compose(a, bc),
                _ => true,
            })
        })
    });
    let units = (0..g.n_objects()).all(|p| {
        let e = g.identity(p);
        g.src(e) == p
            && g.tgt(e) == p
            && (0..n).all(|a| (g.src(a) != p || g.compose(e, a) == Some(a)) && (g.tgt(a) != p || g.compose(a, e) == Some(a)))
    });
    let inverses = (0..n).all(|a| {
        (0..n).any(|b| g.compose(a, b) == Some(g.identity(g.src(a))) && g.compose(b, a) == Some(g.identity(g.tgt(a))))
    });
    assoc && units && inverses
}
