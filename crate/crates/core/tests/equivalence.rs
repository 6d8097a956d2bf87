use mpkit_core::cohomology::{Mu2OpextSpace, OpextPair};
use mpkit_core::fixtures;
use mpkit_core::groupoid::FiniteGroupoid;
use mpkit_core::matched_pair::Boxes;
use mpkit_core::tensor_cats::{certify_equivalence, group_theoretical_data, ReductionChoices};

/// Rank of the group-theoretical ring for trivial cocycles: the sum over
/// double cosets `KgK` of the class count of `K ∩ gKg⁻¹`.
fn double_coset_rank(g: &FiniteGroupoid, k: &[usize]) -> usize {
    let n = g.n_arrows();
    let mut seen = vec![false; n];
    let mut rank = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        for &a in k {
            for &b in k {
                seen[g.mul(g.mul(a, x), b)] = true;
            }
        }
        let stab: Vec<usize> = k.iter().copied().filter(|&a| k.contains(&g.mul(g.mul(g.inverse(x), a), x))).collect();
        let mut classes = vec![usize::MAX; n];
        let mut count = 0;
        for &a in &stab {
            if classes[a] != usize::MAX {
                continue;
            }
            for &c in &stab {
                classes[g.mul(g.mul(g.inverse(c), a), c)] = count;
            }
            count += 1;
        }
        rank += count;
    }
    rank
}

#[test]
fn trivial_pair_ranks_match_double_cosets() {
    for (f, want) in fixtures::all().into_iter().zip([6, 4, 1, 2]) {
        let p = OpextPair::trivial();
        let data = group_theoretical_data(&f.mp, &p, ReductionChoices::default()).unwrap();
        assert_eq!(double_coset_rank(&data.group, &data.subgroup.arrows), want, "{}", f.name);
        let cert = certify_equivalence(&f.mp, &p, ReductionChoices::default(), 7).unwrap();
        assert!(cert.passed(), "{}", f.name);
        for ring in [&cert.rep, &cert.rep_left, &cert.bimodule, &cert.group] {
            assert_eq!(ring.rank(), want, "{}", f.name);
        }
    }
}

#[test]
fn every_fixture_pair_is_certified() {
    for f in fixtures::all() {
        let bx = Boxes::new(&f.mp);
        let space = Mu2OpextSpace::new(&f.mp, &bx);
        for z in 0..1u64 << space.dim() {
            let p = space.pair(&space.combine(&space.basis, z));
            let cert = certify_equivalence(&f.mp, &p, ReductionChoices::default(), z).unwrap();
            assert!(cert.passed(), "{} pair {z}", f.name);
            assert_eq!(cert.sum_of_squares, bx.len());
        }
    }
}
