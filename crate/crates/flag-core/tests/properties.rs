//! Property tests over randomly drawn roots, coefficients and flags.

use flag_core::equigeodesic::{bracket_m, is_equigeodesic, TangentVector};
use flag_core::flagspace::{build_flag, FlagManifold};
use flag_core::rootsystem::{
    assign_signs, build_root_system, jacobi_defect, LieType, Root, WeylBasisData,
};
use flag_core::triples::{zero_sum_triples, TripleMode};
use flag_core::{rat, Rat};
use proptest::prelude::*;

fn setup(name: &str, parabolic: &[usize]) -> (FlagManifold, WeylBasisData) {
    let rs = build_root_system(&LieType::parse(name).unwrap());
    let w = assign_signs(&rs);
    (build_flag(rs, parabolic).unwrap(), w)
}

/// A nonzero rational from a small integer grid.
fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn random_vector(flag: &FlagManifold, picks: &[(usize, Rat, Rat)]) -> TangentVector {
    let pos = flag.r_m_pos().to_vec();
    let mut entries: std::collections::BTreeMap<Root, (Rat, Rat)> = Default::default();
    for (i, re, im) in picks {
        entries.entry(pos[i % pos.len()].clone()).or_insert((re.clone(), im.clone()));
    }
    TangentVector::from_components(flag, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric(picks in proptest::collection::vec((0usize..64, small_rat(), small_rat()), 1..5),
                                other in proptest::collection::vec((0usize..64, small_rat(), small_rat()), 1..5)) {
        let (flag, w) = setup("G2", &[0]);
        let x = random_vector(&flag, &picks);
        let y = random_vector(&flag, &other);
        let xy = bracket_m(&flag, &w, &x, &y);
        let yx = bracket_m(&flag, &w, &y, &x);
        for r in xy.support() {
            prop_assert_eq!(xy.coeff(r), -&yx.coeff(r));
        }
        prop_assert!(bracket_m(&flag, &w, &x, &x).is_zero());
    }

    #[test]
    fn equigeodesic_is_scale_invariant(picks in proptest::collection::vec((0usize..64, small_rat(), small_rat()), 1..6),
                                       num in 1i64..9, den in 1i64..5, neg in proptest::bool::ANY) {
        let (flag, w) = setup("G2", &[1]);
        let x = random_vector(&flag, &picks);
        let t = if neg { rat(-num, den) } else { rat(num, den) };
        let a = is_equigeodesic(&flag, &w, &x).is_equigeodesic;
        let b = is_equigeodesic(&flag, &w, &x.scaled(&t)).is_equigeodesic;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn kappa_is_additive_on_random_flags(par_mask in 0usize..7, ai in 0usize..24, bi in 0usize..24) {
        // Masks pick parabolic subsets of B3's three simple roots.
        let parabolic: Vec<usize> = (0..3).filter(|i| (par_mask >> i) & 1 == 1).collect();
        let (flag, _) = setup("B3", &parabolic);
        let rs = flag.root_system();
        let roots: Vec<Root> = rs.roots().cloned().collect();
        let a = &roots[ai % roots.len()];
        let b = &roots[bi % roots.len()];
        let kap = |r: &Root| flag.kappa(r).map(|t| t.coords().to_vec()).unwrap_or_else(|| vec![0; flag.t_dim()]);
        let neg: Vec<i64> = kap(a).iter().map(|c| -c).collect();
        prop_assert_eq!(kap(&a.neg()), neg);
        let sum = a.add(b);
        if rs.contains(&sum) {
            let lhs = kap(&sum);
            let rhs: Vec<i64> = kap(a).iter().zip(kap(b)).map(|(x, y)| x + y).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn jacobi_holds_across_small_algebras() {
    for name in ["A1", "A2", "A3", "B2", "G2"] {
        let rs = build_root_system(&LieType::parse(name).unwrap());
        let w = assign_signs(&rs);
        assert_eq!(jacobi_defect(&rs, &w), None, "{name}");
    }
}

#[test]
fn every_triple_lifts_to_roots_on_rank_two_and_three_flags() {
    for name in ["A2", "A3", "B2", "B3", "C3", "G2"] {
        let lt = LieType::parse(name).unwrap();
        let rs = build_root_system(&lt);
        let rank = rs.rank();
        for mask in 0..(1usize << rank) - 1 {
            let parabolic: Vec<usize> = (0..rank).filter(|i| (mask >> i) & 1 == 1).collect();
            let flag = build_flag(rs.clone(), &parabolic).unwrap();
            for t in zero_sum_triples(&flag, TripleMode::Multiset) {
                let w = t.witness.unwrap_or_else(|| {
                    panic!("{name} parabolic {parabolic:?}: triple {:?} has no lift", t.members)
                });
                assert!(w[0].add(&w[1]).add(&w[2]).is_zero());
                for (root, member) in w.iter().zip(&t.members) {
                    assert_eq!(flag.kappa(root).as_ref(), Some(member));
                }
            }
        }
    }
}
