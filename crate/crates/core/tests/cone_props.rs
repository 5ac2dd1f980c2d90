use num_rational::BigRational;
use proptest::prelude::*;

use dihedral_schubert::cones::{
    cone_equal, coherence_sampling, gen_km, gen_wti, is_member, star_slots, theta, ConeGeometry, DominantWeight,
    KmAlgebra, DEFAULT_BUDGET,
};

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn weight_inequalities_are_symmetric() {
    for n in 2..=6 {
        for m in [3, 4] {
            let wti = gen_wti(n, m).unwrap().system;
            let set = wti.scalar_set();
            for p in permutations(m) {
                assert_eq!(wti.permuted(&p).scalar_set(), set, "n={n} m={m} {p:?}");
            }
            let starred = wti.pushforward_star(m);
            assert!(cone_equal(&starred, &wti).unwrap().equal(), "n={n} m={m}");
        }
    }
}

#[test]
fn km_is_symmetric_in_the_first_slots() {
    for n in 2..=5 {
        for m in [2, 3] {
            let km = gen_km(KmAlgebra::At, n, m, DEFAULT_BUDGET).unwrap();
            let set = km.scalar_set();
            for mut p in permutations(m) {
                p.push(m);
                assert_eq!(km.permuted(&p).scalar_set(), set, "n={n} m={m} {p:?}");
            }
        }
    }
}

#[test]
fn theta_is_an_involution_on_systems() {
    for n in 2..=6 {
        let km = gen_km(KmAlgebra::GrBIntersection, n, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(km.pushforward_theta().pushforward_theta().scalar_set(), km.scalar_set());
    }
}

#[test]
fn diagonal_point_satisfies_k1() {
    for n in 2..=6 {
        let k1 = gen_km(KmAlgebra::At, n, 1, DEFAULT_BUDGET).unwrap();
        let w = DominantWeight::ints(2, 3);
        assert!(is_member(&[w.clone(), w], &k1).unwrap().member);
    }
}

#[test]
fn composition_is_coherent() {
    let mut members = 0;
    for n in 2..=4 {
        for (m, l) in [(2, 2), (2, 3)] {
            let r = coherence_sampling(KmAlgebra::At, n, m, l, 40, 7 + n as u64).unwrap();
            assert_eq!(r.samples, 40);
            assert!(r.disagreements.is_empty(), "n={n} m={m} l={l}: {:?}", r.disagreements);
            members += r.members;
        }
    }
    // both outcomes occur
    assert!(members > 0 && members < 6 * 40, "{members}");
}

fn weight() -> impl Strategy<Value = DominantWeight> {
    (0i64..=12, 0i64..=12, 1i64..=4)
        .prop_map(|(a, b, d)| DominantWeight::new(BigRational::new(a.into(), d.into()), BigRational::new(b.into(), d.into())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_is_invariant(n in 2u32..=6, pt in prop::collection::vec(weight(), 3), shift in 0usize..3) {
        let wti = gen_wti(n, 3).unwrap().system;
        let geometry = ConeGeometry::new(n).unwrap();
        let base = is_member(&pt, &wti).unwrap().member;
        let mut rotated = pt.clone();
        rotated.rotate_left(shift);
        prop_assert_eq!(is_member(&rotated, &wti).unwrap().member, base);
        let starred = star_slots(&geometry, &pt, 3);
        prop_assert_eq!(is_member(&starred, &wti).unwrap().member, base);
    }

    #[test]
    fn theta_is_an_involution_on_points(n in 2u32..=9, pt in prop::collection::vec(weight(), 2..6)) {
        let geometry = ConeGeometry::new(n).unwrap();
        prop_assert_eq!(theta(&geometry, &theta(&geometry, &pt)), pt);
    }
}
