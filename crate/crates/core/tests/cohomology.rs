mod common;

use mpkit_core::cohomology::{
    check_opext_pair, coboundary, coboundary_at, is_cocycle, kac_cocycle, kac_properties, solve_coboundary, transport,
    Cochain, Mu2OpextSpace, OpextPair,
};
use mpkit_core::fixtures;
use mpkit_core::groupoid::{choose_transversal, FiniteGroupoid, Subgroupoid, TransversalRule};
use mpkit_core::groups::cyclic;
use mpkit_core::linalg::FreeChoice;
use mpkit_core::matched_pair::{Boxes, Diagonal};
use mpkit_core::tensor_cats::{group_theoretical_data, ReductionChoices};
use mpkit_core::{Error, Phase};
use proptest::prelude::*;

use common::zoo;

fn random_cochain(g: &FiniteGroupoid, degree: usize, den: u64, seed: u64) -> Cochain {
    Cochain::from_fn(g, degree, |t| {
        let mut s = t.iter().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, &a| (h ^ a as u64).wrapping_mul(0x1000_0000_01b3));
        s ^= s >> 29;
        Phase::new((s % den) as i64, den)
    })
}

/// Normalized version: zero whenever an argument is an identity.
fn normalized(g: &FiniteGroupoid, c: &Cochain) -> Cochain {
    Cochain::from_fn(g, c.degree(), |t| {
        if t.iter().any(|&a| g.is_identity(a)) {
            Phase::default()
        } else {
            c.get(t)
        }
    })
}

#[test]
fn degree_two_coboundary_formula() {
    for g in zoo() {
        let psi = random_cochain(&g, 2, 6, 11);
        for t in g.composable_tuples(3) {
            let (a, b, c) = (t[0], t[1], t[2]);
            let want = psi.get(&[b, c]) - psi.get(&[g.mul(a, b), c]) + psi.get(&[a, g.mul(b, c)]) - psi.get(&[a, b]);
            assert_eq!(coboundary_at(&g, &psi, &t), want);
        }
    }
}

#[test]
fn c2_cocycles() {
    let g = cyclic(2);
    let mut omega = Cochain::zero(3);
    omega.set(&[1, 1, 1], Phase::half());
    assert!(is_cocycle(&g, &omega));
    let mut not = Cochain::zero(3);
    not.set(&[1, 1, 0], Phase::half());
    assert!(!is_cocycle(&g, &not));
}

#[test]
fn c2_generator_is_not_a_coboundary() {
    let g = cyclic(2);
    let mut omega = Cochain::zero(3);
    omega.set(&[1, 1, 1], Phase::half());
    let err = solve_coboundary(&g, None, &omega, &Cochain::zero(3), FreeChoice::Zero);
    assert!(matches!(err, Err(Error::NoSolution(_))));
    // Exhaustive check over 2-cochains with values in (1/4)ℤ/ℤ.
    let pairs = g.composable_tuples(2);
    for code in 0..4u32.pow(pairs.len() as u32) {
        let mut psi = Cochain::zero(2);
        let mut k = code;
        for t in &pairs {
            psi.set(t, Phase::new((k % 4) as i64, 4));
            k /= 4;
        }
        assert_ne!(coboundary(&g, &psi), omega);
    }
}

#[test]
fn opext_counts_match_brute_force() {
    for f in [fixtures::ex_k4(), fixtures::ex_s3(), fixtures::ex_pair2()] {
        let bx = Boxes::new(&f.mp);
        let space = Mu2OpextSpace::new(&f.mp, &bx);
        let (sv, tv) = (&space.sigma_vars, &space.tau_vars);
        let ncols = sv.len() + tv.len();
        assert_eq!(ncols, space.ncols());
        let mut count = 0u64;
        for code in 0..1u64 << ncols {
            let mut p = OpextPair::trivial();
            for (i, &(a, b)) in sv.iter().chain(tv).enumerate() {
                if code >> i & 1 == 1 {
                    let c = if i < sv.len() { &mut p.sigma } else { &mut p.tau };
                    c.set(&[a, b], Phase::half());
                }
            }
            count += check_opext_pair(&f.mp, &bx, &p).is_valid() as u64;
        }
        assert_eq!(count, 1 << space.dim(), "{}", f.name);
    }
}

#[test]
fn corrupted_tau_breaks_a_grid() {
    let f = fixtures::ex_k4();
    let bx = Boxes::new(&f.mp);
    let space = Mu2OpextSpace::new(&f.mp, &bx);
    let mut p = OpextPair::trivial();
    let (a, b) = space.tau_vars[0];
    p.tau.set(&[a, b], Phase::new(1, 4));
    let rep = check_opext_pair(&f.mp, &bx, &p);
    assert!(!rep.is_valid());
}

#[test]
fn kac_cocycle_is_additive_in_the_pair() {
    for f in fixtures::all() {
        let bx = Boxes::new(&f.mp);
        let diag = Diagonal::new(&f.mp);
        let space = Mu2OpextSpace::new(&f.mp, &bx);
        let zero = kac_cocycle(&f.mp, &bx, &diag, &OpextPair::trivial());
        assert!(zero.is_trivial());
        let n = space.basis.len();
        for z in 0..1u64 << n {
            let mut sum = Cochain::zero(3);
            for i in 0..n {
                if z >> i & 1 == 1 {
                    sum = sum.add(&kac_cocycle(&f.mp, &bx, &diag, &space.pair(&space.basis[i])));
                }
            }
            let p = space.pair(&space.combine(&space.basis, z));
            let omega = kac_cocycle(&f.mp, &bx, &diag, &p);
            assert_eq!(omega, sum, "{}", f.name);
            assert!(is_cocycle(&diag.groupoid, &omega));
            assert!(kac_properties(&f.mp, &bx, &diag, &p, &omega).is_valid());
        }
    }
}

#[test]
fn reduction_to_the_vertex_group() {
    for f in fixtures::all() {
        let bx = Boxes::new(&f.mp);
        let space = Mu2OpextSpace::new(&f.mp, &bx);
        for p in space.class_representatives() {
            let data = group_theoretical_data(&f.mp, &p, ReductionChoices::default()).unwrap();
            assert!(data.all_checks_pass(), "{}", f.name);
            let d = &data.diagonal;
            assert_eq!(coboundary(d, &data.psi), data.omega_tilde.sub(&data.omega));
            assert!(is_cocycle(&data.group, &data.omega_bar));
            assert!(data.omega_bar.restrict(&data.subgroup).is_trivial());
        }
    }
}

#[test]
fn gpd6_coboundary_solve() {
    let f = fixtures::ex_gpd6();
    let d = &f.ambient;
    let psi0 = normalized(d, &random_cochain(d, 2, 2, 99));
    let target = coboundary(d, &psi0);
    for choice in [FreeChoice::Zero, FreeChoice::Shifted] {
        let psi = solve_coboundary(d, None, &target, &Cochain::zero(3), choice).unwrap();
        assert_eq!(coboundary(d, &psi), target);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_is_zero(which in 0usize..6, degree in 1usize..=2, den in 1u64..7, seed in any::<u64>()) {
        let g = &zoo()[which];
        let c = random_cochain(g, degree, den, seed);
        prop_assert!(coboundary(g, &coboundary(g, &c)).is_trivial());
    }

    #[test]
    fn is_cocycle_matches_pointwise_check(which in 0usize..6, degree in 2usize..=3, seed in any::<u64>(), exact in any::<bool>()) {
        let g = &zoo()[which];
        let c = if exact {
            coboundary(g, &random_cochain(g, degree - 1, 4, seed))
        } else {
            random_cochain(g, degree, 2, seed)
        };
        let pointwise = g.composable_tuples(degree + 1).iter().all(|t| coboundary_at(g, &c, t) == Phase::default());
        prop_assert_eq!(is_cocycle(g, &c), pointwise);
    }

    #[test]
    fn solved_coboundaries_reproduce_the_target(which in 0usize..6, seed in any::<u64>()) {
        let g = &zoo()[which];
        let target = coboundary(g, &normalized(g, &random_cochain(g, 2, 6, seed)));
        let psi = solve_coboundary(g, None, &target, &Cochain::zero(3), FreeChoice::Zero).unwrap();
        prop_assert_eq!(coboundary(g, &psi), target);
    }

    #[test]
    fn transport_restricts_back(seed in any::<u64>(), largest in any::<bool>()) {
        let d = fixtures::ex_gpd6().ambient;
        let (grp, elems) = d.vertex_group(0);
        let rule = if largest { TransversalRule::Largest } else { TransversalRule::Smallest };
        let t = choose_transversal(&d, &Subgroupoid::whole(&d), 0, rule).unwrap();
        let on_grp = random_cochain(&grp, 3, 2, seed);
        let chat = Cochain::from_fn(&d, 3, |_| Phase::default()).add(&on_grp.relabel(&elems));
        let tilde = transport(&d, &chat, &t);
        prop_assert_eq!(tilde.restrict(&Subgroupoid::new(elems.clone())), chat.restrict(&Subgroupoid::new(elems)));
        if is_cocycle(&grp, &on_grp) {
            prop_assert!(is_cocycle(&d, &tilde));
        }
    }
}
