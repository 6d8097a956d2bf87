use mpkit_core::cohomology::grids;
use mpkit_core::fixtures::{self, Fixture};
use mpkit_core::groupoid::Subgroupoid;
use mpkit_core::groups::{cyclic, dihedral};
use mpkit_core::matched_pair::{enumerate_exact_factorizations, from_exact_factorization, Boxes, Diagonal, MatchedPair};
use mpkit_core::Error;

/// `x·g = (x▷g)·(x◁g)` read off the ambient multiplication table.
fn actions_match_ambient(f: &Fixture) {
    let (d, mp, emb) = (&f.ambient, &f.mp, &f.embedding);
    let (h, v) = (mp.horizontal(), mp.vertical());
    for x in 0..h.n_arrows() {
        for g in v.arrows_from(h.tgt(x)) {
            let lhs = d.mul(emb.h[x], emb.v[g]);
            let rhs = d.mul(emb.v[mp.act_left(x, g)], emb.h[mp.act_right(x, g)]);
            assert_eq!(lhs, rhs, "{}: x={x} g={g}", f.name);
        }
    }
}

#[test]
fn fixture_actions_come_from_the_ambient_product() {
    for f in fixtures::all() {
        assert!(f.mp.validate().is_valid(), "{}", f.name);
        actions_match_ambient(&f);
    }
}

#[test]
fn s3_actions() {
    let f = fixtures::ex_s3();
    let mp = &f.mp;
    let (s, r) = (1, 1);
    // Conjugating a rotation by the reflection inverts it, and the
    // reflection passes through unchanged.
    assert_eq!(mp.act_left(s, r), 2);
    assert_eq!(mp.act_right(s, r), s);
    assert_eq!(mp.act_left(0, r), r);
    assert_eq!(mp.act_right(s, 0), s);
}

#[test]
fn corrupted_right_action_breaks_the_product_axiom() {
    let f = fixtures::ex_s3();
    let (l, mut r) = f.mp.action_tables();
    let e = r.iter_mut().find(|e| e[0] == 1 && e[1] == 1).unwrap();
    e[2] = 0;
    let bad = MatchedPair::from_tables(f.mp.horizontal().clone(), f.mp.vertical().clone(), &l, &r).unwrap();
    let rep = bad.validate();
    assert!(rep.count("(xy)◁g") > 0, "{rep}");
}

#[test]
fn diagonal_is_isomorphic_to_the_ambient_groupoid() {
    for f in fixtures::all() {
        let diag = Diagonal::new(&f.mp);
        let dg = &diag.groupoid;
        assert!(dg.validate().is_valid());
        let map: Vec<usize> = diag.pairs.iter().map(|&(g, x)| f.ambient.mul(f.embedding.v[g], f.embedding.h[x])).collect();
        let mut seen = map.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), f.ambient.n_arrows(), "{}", f.name);
        for (a, b) in dg.composable_pairs() {
            assert_eq!(map[dg.mul(a, b)], f.ambient.mul(map[a], map[b]), "{}", f.name);
        }
    }
}

#[test]
fn overlapping_subgroups_are_not_exact() {
    let d = dihedral(3);
    let rot = Subgroupoid::new(vec![0, 1, 2]);
    assert!(matches!(from_exact_factorization(&d, &rot, &rot), Err(Error::NotExact(_))));
    let c4 = cyclic(4);
    let c2 = Subgroupoid::new(vec![0, 2]);
    assert!(matches!(from_exact_factorization(&c4, &c2, &c2), Err(Error::NotExact(_))));
}

#[test]
fn enumeration_finds_the_known_factorizations() {
    let f = fixtures::ex_s3();
    let all = enumerate_exact_factorizations(&f.ambient, 48).unwrap();
    assert!(all.contains(&(f.v.clone(), f.h.clone())));
    // Three reflections, each paired with the rotations on either side,
    // and the two trivial factorizations.
    assert_eq!(all.len(), 8);
    for (v, h) in &all {
        assert_eq!(v.len() * h.len(), 6);
    }
    assert!(matches!(enumerate_exact_factorizations(&f.ambient, 5), Err(Error::BoundExceeded { .. })));
}

#[test]
fn boxes_can_be_filled_from_any_two_adjacent_sides() {
    for f in fixtures::all() {
        let mp = &f.mp;
        let bx = Boxes::new(mp);
        assert_eq!(bx.len(), mp.box_count());
        for &a in &bx.squares {
            let (l, b) = (mp.left(a), mp.bottom(a));
            assert_eq!(mp.box_from_top_left(a.top, l), a);
            assert_eq!(mp.box_from_bottom_right(b, a.right), a);
            assert_eq!(mp.box_from_bottom_left(b, l), a);
        }
    }
}

#[test]
fn box_inverses_and_interchange() {
    for f in fixtures::all() {
        let mp = &f.mp;
        let bx = Boxes::new(mp);
        assert!(bx.vertical.validate().is_valid() && bx.horizontal.validate().is_valid());
        for &a in &bx.squares {
            let hi = mp.h_inverse(a);
            let vi = mp.v_inverse(a);
            assert_eq!(mp.h_compose(mp.h_compose(a, hi).unwrap(), a).unwrap(), a);
            assert_eq!(mp.v_compose(mp.v_compose(a, vi).unwrap(), a).unwrap(), a);
        }
        for [a, b, c, d] in grids(mp, &bx) {
            let s = |i: usize| bx.squares[i];
            let rows = mp.v_compose(mp.h_compose(s(a), s(b)).unwrap(), mp.h_compose(s(c), s(d)).unwrap());
            let cols = mp.h_compose(mp.v_compose(s(a), s(c)).unwrap(), mp.v_compose(s(b), s(d)).unwrap());
            assert_eq!(rows.unwrap(), cols.unwrap(), "{}", f.name);
        }
    }
}
