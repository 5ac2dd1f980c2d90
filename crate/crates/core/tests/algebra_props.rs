use num_rational::BigRational;
use proptest::prelude::*;

use dihedral_schubert::algebra::{AlgebraElement, UniversalAlgebra};
use dihedral_schubert::dihedral::Side;
use dihedral_schubert::field::Field;
use dihedral_schubert::filtration::{gr_mul, gr_mul_elements, superadditivity_audit, ConcaveWeighting};

fn element(alg: &UniversalAlgebra, coeffs: &[i64]) -> AlgebraElement {
    let mut a = AlgebraElement::zero();
    for (w, &c) in alg.basis().iter().zip(coeffs) {
        if c != 0 {
            a.add_term(*w, alg.field().int(c));
        }
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_elements_associate_and_commute(
        n in 2u32..=8,
        a in prop::collection::vec(-3i64..=3, 16),
        b in prop::collection::vec(-3i64..=3, 16),
        c in prop::collection::vec(-3i64..=3, 16),
    ) {
        let alg = UniversalAlgebra::new(&Field::cyclotomic(n).unwrap());
        let (a, b, c) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        let ab = alg.mul(&a, &b).unwrap();
        prop_assert_eq!(&ab, &alg.mul(&b, &a).unwrap());
        let left = alg.mul(&ab, &c).unwrap();
        let right = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn weyl_action_is_an_automorphism(
        n in 2u32..=8,
        a in prop::collection::vec(-3i64..=3, 16),
        b in prop::collection::vec(-3i64..=3, 16),
        first in any::<bool>(),
    ) {
        let alg = UniversalAlgebra::new(&Field::cyclotomic(n).unwrap());
        let i = if first { Side::One } else { Side::Two };
        let (a, b) = (element(&alg, &a), element(&alg, &b));
        let lhs = alg.weyl_action(i, &alg.mul(&a, &b).unwrap()).unwrap();
        let rhs = alg.mul(&alg.weyl_action(i, &a).unwrap(), &alg.weyl_action(i, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(alg.weyl_action(i, &alg.weyl_action(i, &a).unwrap()).unwrap(), a);
    }

    #[test]
    fn hyperbolic_superadditivity(p in 1i64..=40, q in 1i64..=40) {
        // q = t^(1/2) must be rational, and t ≠ 1
        prop_assume!(p != q);
        let field = Field::hyperbolic(BigRational::new((p * p).into(), (q * q).into())).unwrap();
        let report = superadditivity_audit(&field, 8).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures);
    }
}

#[test]
fn associated_graded_algebras_are_commutative_and_associative() {
    for n in 2..=8 {
        let alg = UniversalAlgebra::new(&Field::cyclotomic(n).unwrap());
        for (wt, basis) in [
            (ConcaveWeighting::full(&alg), alg.basis()),
            (ConcaveWeighting::side(&alg, Side::One), alg.grassmannian_basis(Side::One)),
            (ConcaveWeighting::side(&alg, Side::Two), alg.grassmannian_basis(Side::Two)),
        ] {
            for u in &basis {
                for v in &basis {
                    let uv = gr_mul(u, v, &wt).unwrap();
                    assert_eq!(uv, gr_mul(v, u, &wt).unwrap(), "n={n} {u} {v}");
                    for w in &basis {
                        let left = gr_mul_elements(&uv, &alg.sigma(*w), &wt).unwrap();
                        let right = gr_mul_elements(&alg.sigma(*u), &gr_mul(v, w, &wt).unwrap(), &wt).unwrap();
                        assert_eq!(left, right, "n={n} ({u}, {v}, {w})");
                    }
                }
            }
        }
    }
}
