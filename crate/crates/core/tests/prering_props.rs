use proptest::prelude::*;

use dihedral_schubert::dihedral::Side;
use dihedral_schubert::prering::{FlagPreRing, FlagVector, GrassVector, GrassmannianPreRing, Hat};

fn gen(r: u32) -> GrassVector {
    GrassVector::single(r, Hat::One)
}

#[test]
fn grassmannian_associativity() {
    for n in 2..=8 {
        let ring = GrassmannianPreRing::new(n).unwrap();
        for r1 in 0..n {
            for r2 in 0..n {
                for r3 in 0..n {
                    let left = ring.mul_vec(&ring.mul(r1, r2).unwrap(), &gen(r3)).unwrap();
                    let right = ring.mul_vec(&gen(r1), &ring.mul(r2, r3).unwrap()).unwrap();
                    assert_eq!(left, right, "n={n} ({r1}, {r2}, {r3})");
                    for r4 in 0..n {
                        assert_eq!(
                            ring.mul_vec(&left, &gen(r4)).unwrap(),
                            ring.mul_vec(&right, &gen(r4)).unwrap(),
                            "n={n} ({r1}, {r2}, {r3}, {r4})"
                        );
                    }
                }
            }
        }
    }
}

fn tuples(n: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|t| (0..n).map(move |r| [t.clone(), vec![r]].concat())).collect();
    }
    out
}

#[test]
fn m_fold_coefficient_law() {
    for n in 2..=8 {
        let ring = GrassmannianPreRing::new(n).unwrap();
        for m in 2..=4 {
            for rs in tuples(n, m) {
                if rs.iter().sum::<u32>() != (n - 1) * (m as u32 - 1) {
                    continue;
                }
                let mut sorted = rs.clone();
                sorted.sort_unstable();
                let dual_pair = sorted[2..].iter().all(|&r| r == n - 1) && sorted[0] + sorted[1] == n - 1;
                let expected = if dual_pair { Hat::One } else { Hat::Infinity };
                assert_eq!(ring.product(&rs).unwrap(), GrassVector::single(0, expected), "n={n} {rs:?}");
            }
        }
    }
}

#[test]
fn pullback_matches_except_on_dual_pairs() {
    for n in 2..=8 {
        let ring = GrassmannianPreRing::new(n).unwrap();
        let flag = FlagPreRing::new(n).unwrap();
        for l in Side::BOTH {
            let push = |v: &GrassVector| {
                let mut out = FlagVector::zero();
                for (r, c) in v.terms() {
                    out.add_term(flag.pullback(l, *r).unwrap(), *c).unwrap();
                }
                out
            };
            for r1 in 0..n {
                for r2 in 0..n {
                    let lhs = push(&ring.mul(r1, r2).unwrap());
                    let rhs = flag.mul(&flag.pullback(l, r1).unwrap(), &flag.pullback(l, r2).unwrap()).unwrap();
                    if r1 + r2 == n - 1 && r1 > 0 && r2 > 0 {
                        // the point meets the pulled-back point class in a whole fibre
                        let fibre = flag.pullback(l, 0).unwrap();
                        assert_eq!(lhs, FlagVector::single(fibre, Hat::One));
                        assert_eq!(rhs, FlagVector::single(fibre, Hat::Infinity), "n={n} ({r1}, {r2})");
                    } else {
                        assert_eq!(lhs, rhs, "n={n} l={l:?} ({r1}, {r2})");
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn flag_products_commute_and_pd_pairs_to_one(n in 2u32..=10, a in 0usize..20, b in 0usize..20, c in 0usize..20) {
        let flag = FlagPreRing::new(n).unwrap();
        let els = flag.group().elements();
        let (x, y, z) = (els[a % els.len()], els[b % els.len()], els[c % els.len()]);
        prop_assert_eq!(flag.mul(&x, &y).unwrap(), flag.mul(&y, &x).unwrap());
        prop_assert_eq!(flag.pd(&flag.pd(&x)), x);
        let point = flag.group().elements()[0];
        prop_assert!(point.is_identity());
        prop_assert_eq!(flag.mul(&x, &flag.pd(&x)).unwrap(), FlagVector::single(point, Hat::One));
        // associativity wherever both bracketings are defined
        let xy = flag.mul(&x, &y).unwrap();
        let yz = flag.mul(&y, &z).unwrap();
        let left = flag.mul_vec(&xy, &FlagVector::single(z, Hat::One));
        let right = flag.mul_vec(&FlagVector::single(x, Hat::One), &yz);
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert_eq!(l, r);
        }
    }
}
