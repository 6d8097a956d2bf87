mod common;

use mpkit_core::groupoid::{choose_transversal, FiniteGroupoid, Subgroupoid, TransversalRule};
use mpkit_core::groups::{cyclic, dihedral, small_groups};
use proptest::prelude::*;

use common::{brute_force_is_groupoid, relabel, zoo};

#[test]
fn catalog_groups_are_groupoids() {
    for (name, g) in small_groups() {
        assert!(g.validate().is_valid(), "{name}");
        assert!(brute_force_is_groupoid(&g), "{name}");
    }
}

#[test]
fn corrupted_pair_groupoid_entry_is_flagged() {
    let d = FiniteGroupoid::pair(2);
    for (a, b) in d.composable_pairs() {
        for c in 0..d.n_arrows() {
            if c == d.mul(a, b) {
                continue;
            }
            let bad = d.with_compose_entry(a, b, c);
            assert!(!brute_force_is_groupoid(&bad));
            assert!(!bad.validate().is_valid(), "({a},{b}) ↦ {c}");
        }
    }
}

#[test]
fn components_and_vertex_groups() {
    let g = cyclic(3).disjoint_union(&FiniteGroupoid::pair(2)).disjoint_union(&dihedral(3));
    let comps = g.connected_components();
    assert_eq!(comps.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 1]);
    assert!(!g.is_connected());
    let sizes: Vec<usize> = (0..g.n_objects()).map(|p| g.vertex_group(p).0.n_arrows()).collect();
    assert_eq!(sizes, vec![3, 1, 1, 6]);
}

#[test]
fn wide_subgroupoid_counts() {
    // Subgroup counts of C4, S3 and C2×C2.
    let c2 = cyclic(2);
    for (g, want) in [(cyclic(4), 3), (dihedral(3), 6), (c2.product(&c2), 5)] {
        assert_eq!(g.wide_subgroupoids().len(), want);
    }
    // Pair(2): only the identities and everything.
    assert_eq!(FiniteGroupoid::pair(2).wide_subgroupoids().len(), 2);
    for g in zoo() {
        for s in g.wide_subgroupoids() {
            assert!(s.validate_wide(&g).is_valid());
        }
    }
}

#[test]
fn non_wide_sets_are_rejected() {
    let g = FiniteGroupoid::pair(2);
    let one_identity = Subgroupoid::new(vec![g.identity(0)]);
    assert!(!one_identity.validate_wide(&g).is_valid());
    let s3 = dihedral(3);
    assert!(!Subgroupoid::new(vec![0, 1]).validate_wide(&s3).is_valid());
}

#[test]
fn transversals() {
    let g = FiniteGroupoid::pair(3).product(&cyclic(2));
    let v = Subgroupoid::whole(&g);
    for base in 0..g.n_objects() {
        for rule in [TransversalRule::Smallest, TransversalRule::Largest] {
            let t = choose_transversal(&g, &v, base, rule).unwrap();
            assert_eq!(t.tau[base], g.identity(base));
            for (p, &a) in t.tau.iter().enumerate() {
                assert_eq!((g.src(a), g.tgt(a)), (base, p));
            }
        }
    }
    let disconnected = cyclic(2).disjoint_union(&cyclic(2));
    let all = Subgroupoid::whole(&disconnected);
    assert!(choose_transversal(&disconnected, &all, 0, TransversalRule::Smallest).is_err());
}

proptest! {
    #[test]
    fn relabelling_preserves_validity(which in 0usize..6, seed in any::<u64>()) {
        let g = &zoo()[which];
        let mut perm: Vec<usize> = (0..g.n_arrows()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabel(g, &perm);
        prop_assert!(h.validate().is_valid());
        prop_assert_eq!(h.connected_components().len(), g.connected_components().len());
    }

    #[test]
    fn validator_agrees_with_brute_force(which in 0usize..6, a in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let g = &zoo()[which];
        let pairs = g.composable_pairs();
        let (x, y) = pairs[a.index(pairs.len())];
        let bad = g.with_compose_entry(x, y, c.index(g.n_arrows()));
        prop_assert_eq!(bad.validate().is_valid(), brute_force_is_groupoid(&bad));
    }
}
