//! Schubert calculus of rank-2 Kac–Moody flag varieties from the Chevalley
//! formula, and the comparison with `A_t`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::algebra::{AlgebraElement, UniversalAlgebra};
use crate::dihedral::{Dihedral, Side, WeylElement};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Degree cap used when the Weyl group is infinite.
pub const HYPERBOLIC_CAP: u32 = 8;

/// Cohomology of `G/B` for the Cartan matrix `[[2, −a12], [−a21, 2]]`.
#[derive(Clone, Debug)]
pub struct KacMoody {
    a12: u32,
    a21: u32,
    field: Field,
    group: Dihedral,
    cap: u32,
    /// `X_b = (X_u · X_{s_i}) / d` for every basis element of length ≥ 2.
    factor: BTreeMap<WeylElement, (WeylElement, Side, FieldElement)>,
}

/// Outcome of [`iso_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub passed: bool,
    pub pairs_checked: usize,
    pub generators_checked: usize,
    pub counterexample: Option<String>,
}

/// Ground field in which `t + 1/t = √(a12 a21)`.
pub fn field_for_cartan(a12: u32, a21: u32) -> Result<Field> {
    if (a12 == 0) != (a21 == 0) {
        return Err(Error::UnsupportedCartan(a12, a21));
    }
    match a12 * a21 {
        0 => Field::cyclotomic(2),
        1 => Field::cyclotomic(3),
        2 => Field::cyclotomic(4),
        3 => Field::cyclotomic(6),
        // t + 1/t = 2 forces t = 1
        4 => Field::hyperbolic(BigRational::from_integer(1.into())),
        _ => Err(Error::UnsupportedCartan(a12, a21)),
    }
}

impl KacMoody {
    pub fn new(a12: u32, a21: u32) -> Result<KacMoody> {
        let field = field_for_cartan(a12, a21)?;
        let group = Dihedral::for_field(&field);
        let cap = group.n().unwrap_or(HYPERBOLIC_CAP);
        let mut km = KacMoody { a12, a21, field, group, cap, factor: BTreeMap::new() };
        km.build_factorizations()?;
        Ok(km)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn group(&self) -> &Dihedral {
        &self.group
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn cartan(&self) -> (u32, u32) {
        (self.a12, self.a21)
    }

    pub fn basis(&self) -> Vec<WeylElement> {
        self.group.elements_up_to(self.cap)
    }

    fn a(&self, i: Side) -> i64 {
        match i {
            Side::One => self.a12 as i64,
            Side::Two => self.a21 as i64,
        }
    }

    /// `s_i` on coroot coordinates: `s_i(α_i^∨) = −α_i^∨`,
    /// `s_i(α_j^∨) = α_j^∨ + a_ij α_i^∨`.
    fn reflect_coroot(&self, i: Side, v: [i64; 2]) -> [i64; 2] {
        let (ii, jj) = (idx(i), idx(i.other()));
        let mut out = v;
        out[ii] = self.a(i) * v[jj] - v[ii];
        out
    }

    /// Positive coroot of a reflection given by its palindromic reduced word.
    fn coroot_of_reflection(&self, r: &WeylElement) -> [i64; 2] {
        let word = r.word();
        debug_assert!(word.len() % 2 == 1);
        let mid = word.len() / 2;
        let mut v = [0i64; 2];
        v[idx(word[mid])] = 1;
        for letter in word[..mid].iter().rev() {
            v = self.reflect_coroot(*letter, v);
        }
        v
    }

    fn elements_of_length(&self, len: u32) -> Vec<WeylElement> {
        if Some(len) == self.group.n() {
            vec![self.group.longest().expect("finite")]
        } else if self.group.n().is_some_and(|n| len > n) {
            Vec::new()
        } else {
            vec![WeylElement::ending(len, Side::One), WeylElement::ending(len, Side::Two)]
        }
    }

    /// `[X_w]·[X_{s_i}] = Σ ⟨ω_i, β^∨⟩ [X_{w s_β}]` over `ℓ(w s_β) = ℓ(w) + 1`.
    pub fn chevalley_basis(&self, w: &WeylElement, i: Side) -> Result<AlgebraElement> {
        let next = w.len + 1;
        if next > self.cap && self.group.n().is_none() {
            return Err(Error::CapExceeded { cap: self.cap, degree: next });
        }
        let w_inv = self.group.inverse(w);
        let mut out = AlgebraElement::zero();
        for target in self.elements_of_length(next) {
            let reflection = self.group.compose(&w_inv, &target);
            let coroot = self.coroot_of_reflection(&reflection);
            out.add_term(target, self.field.int(coroot[idx(i)]));
        }
        Ok(out)
    }

    /// Multiplication by the divisor class `[X_{s_i}]`.
    pub fn chevalley_mul(&self, a: &AlgebraElement, i: Side) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (w, c) in a.terms() {
            out = out.add(&self.chevalley_basis(w, i)?.scale(c));
        }
        Ok(out)
    }

    fn build_factorizations(&mut self) -> Result<()> {
        for b in self.basis() {
            if b.len < 2 {
                continue;
            }
            let mut found = None;
            'search: for u in self.elements_of_length(b.len - 1) {
                for i in Side::BOTH {
                    let p = self.chevalley_basis(&u, i)?;
                    if p.len() == 1 {
                        if let Some(d) = p.coeff(&b) {
                            found = Some((u, i, d.clone()));
                            break 'search;
                        }
                    }
                }
            }
            let entry = found.ok_or_else(|| Error::Domain(format!("no Chevalley factorization for {b}")))?;
            self.factor.insert(b, entry);
        }
        Ok(())
    }

    pub fn mul_basis(&self, a: &WeylElement, b: &WeylElement) -> Result<AlgebraElement> {
        if a.len + b.len > self.cap && self.group.n().is_none() {
            return Err(Error::CapExceeded { cap: self.cap, degree: a.len + b.len });
        }
        let one = self.field.one();
        match b.len {
            0 => Ok(AlgebraElement::basis(*a, one)),
            1 => self.chevalley_basis(a, b.side.expect("generator")),
            _ => {
                let (u, i, d) = &self.factor[b];
                let partial = self.mul_basis(a, u)?;
                Ok(self.chevalley_mul(&partial, *i)?.scale(&d.inverse()))
            }
        }
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                out = out.add(&self.mul_basis(u, v)?.scale(&(a * b)));
            }
        }
        Ok(out)
    }

    /// `s_i` on degree one: `s_i(X_i) = −X_i + a_ij X_j`, `s_i(X_j) = X_j`.
    fn weyl_on_generator(&self, i: Side, j: Side) -> AlgebraElement {
        let gen = |s: Side| WeylElement::generator(s);
        if i == j {
            let mut out = AlgebraElement::basis(gen(i), self.field.int(-1));
            out.add_term(gen(i.other()), self.field.int(self.a(i)));
            out
        } else {
            AlgebraElement::basis(gen(j), self.field.one())
        }
    }

    /// `s_i` extended multiplicatively to every Schubert class.
    pub fn weyl_action_basis(&self, i: Side, w: &WeylElement) -> Result<AlgebraElement> {
        match w.len {
            0 => Ok(AlgebraElement::basis(*w, self.field.one())),
            1 => Ok(self.weyl_on_generator(i, w.side.expect("generator"))),
            _ => {
                let (u, j, d) = &self.factor[w];
                let image = self.mul(&self.weyl_action_basis(i, u)?, &self.weyl_on_generator(i, *j))?;
                Ok(image.scale(&d.inverse()))
            }
        }
    }

    pub fn weyl_action(&self, i: Side, a: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (w, c) in a.terms() {
            out = out.add(&self.weyl_action_basis(i, w)?.scale(c));
        }
        Ok(out)
    }

    /// `√(a12/a21)`, or 1 for the degenerate pair `(0, 0)`.
    pub fn ratio(&self) -> Result<FieldElement> {
        if self.a12 == 0 {
            return Ok(self.field.one());
        }
        let r = BigRational::new(BigInt::from(self.a12), BigInt::from(self.a21));
        self.field.sqrt_rational(&r).ok_or(Error::UnsupportedCartan(self.a12, self.a21))
    }

    /// `c_i = √(a_{i,3−i} / gcd(a12, a21))`.
    pub fn default_scalars(&self) -> Result<(FieldElement, FieldElement)> {
        if self.a12 == 0 {
            return Ok((self.field.one(), self.field.one()));
        }
        let g = self.a12.gcd(&self.a21);
        let root = |a: u32| {
            self.field
                .sqrt_rational(&BigRational::new(BigInt::from(a), BigInt::from(g)))
                .ok_or(Error::UnsupportedCartan(self.a12, self.a21))
        };
        Ok((root(self.a12)?, root(self.a21)?))
    }
}

fn idx(s: Side) -> usize {
    match s {
        Side::One => 0,
        Side::Two => 1,
    }
}

/// Image of `[X_w]` under `[X_w] ↦ c_i^⌈k/2⌉ c_{3−i}^⌊k/2⌋ σ_w`.
pub fn iso_scalar(w: &WeylElement, c1: &FieldElement, c2: &FieldElement, n: Option<u32>) -> FieldElement {
    let k = w.len;
    let (ci, cj) = match w.side {
        Some(Side::One) => (c1, c2),
        Some(Side::Two) => (c2, c1),
        None if k == 0 => return c1.field().one(),
        None => {
            let n = n.expect("longest element only exists for finite n");
            return if n % 2 == 0 {
                (c1 * c2).pow(n / 2)
            } else {
                &c1.pow(n.div_ceil(2)) * &c2.pow(n / 2)
            };
        }
    };
    &ci.pow(k.div_ceil(2)) * &cj.pow(k / 2)
}

fn map_to_at(km: &KacMoody, x: &AlgebraElement, c1: &FieldElement, c2: &FieldElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (w, c) in x.terms() {
        out.add_term(*w, c * &iso_scalar(w, c1, c2, km.group.n()));
    }
    out
}

/// Checks that the scaled map is a `W`-equivariant algebra isomorphism onto
/// `A_t`, exhaustively on basis pairs within the degree cap.
pub fn iso_check(a12: u32, a21: u32, c1: &FieldElement, c2: &FieldElement) -> Result<IsoReport> {
    let km = KacMoody::new(a12, a21)?;
    let field = km.field.clone();
    if c1.field() != &field || c2.field() != &field || c2.is_zero() || c1.is_zero() {
        return Err(Error::UnsupportedCartan(a12, a21));
    }
    if &(c1 / c2) != &km.ratio()? {
        return Err(Error::UnsupportedCartan(a12, a21));
    }
    let at = UniversalAlgebra::with_cap(&field, km.cap);
    let basis = km.basis();
    let mut report = IsoReport { passed: true, pairs_checked: 0, generators_checked: 0, counterexample: None };
    let fail = |report: &mut IsoReport, msg: String| {
        if report.passed {
            report.passed = false;
            report.counterexample = Some(msg);
        }
    };
    for u in &basis {
        for v in &basis {
            if u.len + v.len > km.cap && km.group.n().is_none() {
                continue;
            }
            let lhs = map_to_at(&km, &km.mul_basis(u, v)?, c1, c2);
            let rhs = at
                .sigma(*u)
                .scale(&iso_scalar(u, c1, c2, km.group.n()))
                .scale(&iso_scalar(v, c1, c2, km.group.n()));
            let rhs = at.mul(&rhs, &at.sigma(*v))?;
            report.pairs_checked += 1;
            if lhs != rhs {
                fail(&mut report, format!("product of {u} and {v}: {lhs:?} vs {rhs:?}"));
            }
        }
    }
    for w in &basis {
        for i in Side::BOTH {
            let lhs = map_to_at(&km, &km.weyl_action_basis(i, w)?, c1, c2);
            let image = AlgebraElement::basis(*w, iso_scalar(w, c1, c2, km.group.n()));
            let rhs = at.weyl_action(i, &image)?;
            report.generators_checked += 1;
            if lhs != rhs {
                fail(&mut report, format!("s{} on {w}: {lhs:?} vs {rhs:?}", i.number()));
            }
        }
    }
    Ok(report)
}

/// `iso_check` with the scalars `c_i = √(a_{i,3−i}/gcd)`.
pub fn iso_check_default(a12: u32, a21: u32) -> Result<IsoReport> {
    let km = KacMoody::new(a12, a21)?;
    let (c1, c2) = km.default_scalars()?;
    iso_check(a12, a21, &c1, &c2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_products() {
        let km = KacMoody::new(1, 1).unwrap();
        let s1 = WeylElement::generator(Side::One);
        let s2 = WeylElement::generator(Side::Two);
        let p = km.mul_basis(&s1, &s2).unwrap();
        let f = km.field();
        let mut expected = AlgebraElement::basis(WeylElement::ending(2, Side::One), f.one());
        expected.add_term(WeylElement::ending(2, Side::Two), f.one());
        assert_eq!(p, expected);
    }

    #[test]
    fn supported_pairs_pass() {
        for (a, b) in [(0, 0), (1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (2, 2)] {
            let r = iso_check_default(a, b).unwrap();
            assert!(r.passed, "({a},{b}): {:?}", r.counterexample);
        }
    }

    #[test]
    fn unsupported_pair() {
        assert!(matches!(KacMoody::new(5, 5), Err(Error::UnsupportedCartan(5, 5))));
    }
}
