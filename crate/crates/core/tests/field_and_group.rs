use num_rational::BigRational;
use proptest::prelude::*;

use dihedral_schubert::dihedral::{dot, Dihedral, Side, WeylElement};
use dihedral_schubert::field::Field;

#[test]
fn t_integer_products() {
    for n in 2..=9 {
        let f = Field::cyclotomic(n).unwrap();
        let n = n as usize;
        for k in 0..=n {
            for l in 0..=n {
                let lhs = &f.t_int(k) * &f.t_int(l);
                let mut rhs = f.zero();
                if k > 0 && l > 0 {
                    let mut j = k.abs_diff(l) + 1;
                    while j < k + l {
                        rhs = &rhs + &f.t_int(j);
                        j += 2;
                    }
                }
                assert_eq!(lhs, rhs, "n={n} [{k}][{l}]");
            }
        }
    }
}

#[test]
fn binomial_symmetry_pascal_and_integrality() {
    for n in 2..=8 {
        let f = Field::cyclotomic(n).unwrap();
        let top = 2 * n as usize;
        let table = f.t_binomial_table(top);
        let tau = f.tau();
        for m in 0..=top {
            for k in 0..=m {
                assert_eq!(table[m][k], table[m][m - k]);
                if k > 0 && k < m {
                    // [m, k] [k] = [m − k + 1] [m, k − 1]
                    let lhs = &table[m][k] * &f.t_int(k);
                    let rhs = &f.t_int(m - k + 1) * &table[m][k - 1];
                    assert_eq!(lhs, rhs, "n={n} m={m} k={k}");
                }
                let poly = Field::t_binomial_in_tau(m, k);
                assert_eq!(f.eval_int_poly(&poly, &tau), table[m][k]);
            }
        }
    }
}

fn element(n: u32, coeffs: &[(i64, i64)]) -> dihedral_schubert::field::FieldElement {
    let f = Field::cyclotomic(n).unwrap();
    let d = f.degree();
    let cs: Vec<BigRational> = (0..d)
        .map(|i| coeffs.get(i).map_or(BigRational::from_integer(0.into()), |&(p, q)| BigRational::new(p.into(), q.into())))
        .collect();
    f.from_coeffs(&cs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sign_agrees_with_float(n in 2u32..=12, coeffs in prop::collection::vec((-50i64..=50, 1i64..=20), 6)) {
        let e = element(n, &coeffs);
        let x = e.to_f64();
        if x.abs() > 1e-12 {
            prop_assert_eq!(e.sign() as f64, x.signum());
        } else if e.is_zero() {
            prop_assert_eq!(e.sign(), 0);
        }
    }
}

proptest! {
    #[test]
    fn field_inverse(n in 2u32..=12, coeffs in prop::collection::vec((-9i64..=9, 1i64..=5), 6)) {
        let e = element(n, &coeffs);
        prop_assume!(!e.is_zero());
        prop_assert!((&e * &e.inverse()).is_one());
    }
}

#[test]
fn group_axioms() {
    for n in 2..=12 {
        let g = Dihedral::finite(n).unwrap();
        let els = g.elements();
        assert_eq!(els.len(), 2 * n as usize);
        let e = WeylElement::IDENTITY;
        for u in &els {
            assert_eq!(g.compose(&e, u), *u);
            assert_eq!(g.compose(u, &e), *u);
            assert_eq!(g.compose(u, &g.inverse(u)), e);
            for v in &els {
                let uv = g.compose(u, v);
                assert!(els.contains(&uv));
                for w in &els {
                    assert_eq!(g.compose(&uv, w), g.compose(u, &g.compose(v, w)));
                }
            }
        }
    }
}

#[test]
fn action_is_orthogonal_and_cosets_are_unique() {
    for n in 2..=12 {
        let f = Field::cyclotomic(n).unwrap();
        let g = Dihedral::finite(n).unwrap();
        let vs = [g.zeta(&f, Side::One), g.zeta(&f, Side::Two), [f.ratio(3, 2), f.theta()]];
        for w in g.elements() {
            for a in &vs {
                for b in &vs {
                    assert_eq!(dot(&g.act(&f, &w, a), &g.act(&f, &w, b)), dot(a, b));
                }
            }
            for i in Side::BOTH {
                let ws = g.compose(&w, &WeylElement::generator(i.other()));
                assert_eq!(g.phi_side(&f, &w, i), g.phi_side(&f, &ws, i), "n={n} w={w}");
            }
        }
        for l in Side::BOTH {
            for r in 0..n {
                let with_r: Vec<WeylElement> = g.elements().into_iter().filter(|w| g.relative_length(w, l) == r).collect();
                assert_eq!(with_r.len(), 2, "n={n} l={l:?} r={r}");
                let z = g.zeta(&f, l);
                assert_eq!(g.act(&f, &with_r[0], &z), g.act(&f, &with_r[1], &z));
                let sl = WeylElement::generator(l);
                assert_eq!(g.compose(&with_r[0], &sl), with_r[1]);
            }
        }
    }
}
