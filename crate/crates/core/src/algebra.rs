//! The universal dihedral cohomology algebra `A_t` in its Schubert basis
//! `{σ_w}`, its Grassmannian subalgebras `B^(i)` and the `W_t`-action.

use std::collections::BTreeMap;

use serde_json::json;

use crate::dihedral::{Dihedral, Side, WeylElement};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Default degree cap in hyperbolic mode.
pub const DEFAULT_CAP: u32 = 16;

/// Finitely supported combination of Schubert classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<WeylElement, FieldElement>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn basis(w: WeylElement, coeff: FieldElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.add_term(w, coeff);
        out
    }

    pub fn add_term(&mut self, w: WeylElement, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&w) {
            Some(c) => &c + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &WeylElement) -> Option<&FieldElement> {
        self.terms.get(w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElement, &FieldElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale_neg())
    }

    pub fn scale(&self, c: &FieldElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, x) in &self.terms {
            out.add_term(*w, c * x);
        }
        out
    }

    fn scale_neg(&self) -> AlgebraElement {
        AlgebraElement { terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect() }
    }

    /// Is every term of degree `d`?
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|w| w.len == d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms.iter().map(|(w, c)| json!({"w": w, "coeff": c.to_json()})).collect(),
        )
    }
}

/// `A_t` for the field's value of `t`.
#[derive(Clone, Debug)]
pub struct UniversalAlgebra {
    field: Field,
    group: Dihedral,
    cap: u32,
    /// `binom[m][k] = [m choose k]_t` for `m <= top degree`.
    binom: Vec<Vec<FieldElement>>,
}

impl UniversalAlgebra {
    /// Cyclotomic fields give the finite algebra of dimension `2n`; hyperbolic
    /// fields are truncated at `DEFAULT_CAP`.
    pub fn new(field: &Field) -> UniversalAlgebra {
        Self::with_cap(field, DEFAULT_CAP)
    }

    pub fn with_cap(field: &Field, cap: u32) -> UniversalAlgebra {
        let group = Dihedral::for_field(field);
        let top = group.n().unwrap_or(cap);
        UniversalAlgebra { field: field.clone(), group, cap: top, binom: field.t_binomial_table(top as usize) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn group(&self) -> &Dihedral {
        &self.group
    }

    /// Top degree: `n` (finite) or the cap (hyperbolic).
    pub fn top_degree(&self) -> u32 {
        self.cap
    }

    pub fn is_finite(&self) -> bool {
        self.group.n().is_some()
    }

    pub fn basis(&self) -> Vec<WeylElement> {
        self.group.elements_up_to(self.cap)
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::basis(WeylElement::IDENTITY, self.field.one())
    }

    pub fn sigma(&self, w: WeylElement) -> AlgebraElement {
        AlgebraElement::basis(w, self.field.one())
    }

    /// Divided power `σ_i^[k]`.
    pub fn divided_power(&self, i: Side, k: u32) -> AlgebraElement {
        self.sigma(WeylElement::ending(k, i))
    }

    pub fn binomial(&self, m: u32, k: u32) -> FieldElement {
        self.binom[m as usize][k as usize].clone()
    }

    /// Product of two Schubert classes, from the defining relations.
    pub fn mul_basis(&self, u: &WeylElement, v: &WeylElement) -> Result<AlgebraElement> {
        if u.is_identity() {
            return Ok(self.sigma(*v));
        }
        if v.is_identity() {
            return Ok(self.sigma(*u));
        }
        let (k, l) = (u.len, v.len);
        let total = k + l;
        match self.group.n() {
            Some(n) if total > n => return Ok(AlgebraElement::zero()),
            None if total > self.cap => return Err(Error::CapExceeded { cap: self.cap, degree: total }),
            _ => {}
        }
        let n = self.group.n();
        // both factors have a side here: lengths are positive and the sum is at most n
        let (su, sv) = (u.side.expect("side"), v.side.expect("side"));
        if su == sv {
            if Some(total) == n {
                return Ok(AlgebraElement::zero());
            }
            return Ok(AlgebraElement::basis(WeylElement::ending(total, su), self.binomial(total, k)));
        }
        if Some(total) == n {
            return Ok(self.sigma(self.group.longest().expect("finite")));
        }
        // u ends in s1 with length k1, v ends in s2 with length k2
        let (k1, k2) = if su == Side::One { (k, l) } else { (l, k) };
        let mut out = AlgebraElement::zero();
        out.add_term(WeylElement::ending(total, Side::One), self.binomial(total - 1, k1 - 1));
        out.add_term(WeylElement::ending(total, Side::Two), self.binomial(total - 1, k2 - 1));
        Ok(out)
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                let xy = x * y;
                for (w, c) in self.mul_basis(u, v)?.terms() {
                    out.add_term(*w, &xy * c);
                }
            }
        }
        Ok(out)
    }

    /// Left-to-right product `σ_{w_1} ⋯ σ_{w_m}`.
    pub fn product_chain(&self, ws: &[WeylElement]) -> Result<AlgebraElement> {
        let (first, rest) = ws
            .split_first()
            .ok_or_else(|| Error::InvalidParameter("product of an empty list".into()))?;
        let mut acc = self.sigma(*first);
        for w in rest {
            acc = self.mul(&acc, &self.sigma(*w))?;
        }
        Ok(acc)
    }

    /// Coefficient of `σ_y` in `σ_{w_1} ⋯ σ_{w_m}`.
    pub fn structure_const(&self, ws: &[WeylElement], y: &WeylElement) -> Result<FieldElement> {
        Ok(self.product_chain(ws)?.coeff(y).cloned().unwrap_or_else(|| self.field.zero()))
    }

    /// `s_i` acting on `A_t`.
    pub fn weyl_action(&self, i: Side, a: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (w, c) in a.terms() {
            if w.is_identity() {
                out.add_term(*w, c.clone());
            } else if self.group.is_longest(w) {
                out.add_term(*w, -c);
            } else if w.side == Some(i) {
                out.add_term(*w, -c);
                let weight = self.field.t_power_sum(w.len);
                out.add_term(WeylElement::ending(w.len, i.other()), &weight * c);
            } else {
                out.add_term(*w, c.clone());
            }
        }
        Ok(out)
    }

    /// Basis `X^(i)` of the Grassmannian subalgebra `B^(i)`.
    pub fn grassmannian_basis(&self, i: Side) -> Vec<WeylElement> {
        self.basis().into_iter().filter(|w| self.group.in_grassmannian(w, i)).collect()
    }

    /// Multiplication table over the given basis as JSON.
    pub fn table_json(&self, basis: &[WeylElement]) -> Result<serde_json::Value> {
        let mut entries = Vec::new();
        for u in basis {
            for v in basis {
                if u.len + v.len > self.cap && !self.is_finite() {
                    continue;
                }
                entries.push(json!({"u": u, "v": v, "terms": self.mul_basis(u, v)?.to_json()}));
            }
        }
        Ok(json!({
            "field": self.field.descriptor().to_json(),
            "basis": basis,
            "table": entries,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products_n3() {
        let f = Field::cyclotomic(3).unwrap();
        let a = UniversalAlgebra::new(&f);
        let s1 = WeylElement::generator(Side::One);
        let s2 = WeylElement::generator(Side::Two);
        let p = a.mul_basis(&s1, &s2).unwrap();
        let expected = a.sigma(WeylElement::ending(2, Side::One)).add(&a.sigma(WeylElement::ending(2, Side::Two)));
        assert_eq!(p, expected);
        // [2]_t = 1 at n = 3
        assert_eq!(a.mul_basis(&s1, &s1).unwrap(), a.sigma(WeylElement::ending(2, Side::One)));
    }

    #[test]
    fn weyl_action_generator_n3() {
        let f = Field::cyclotomic(3).unwrap();
        let a = UniversalAlgebra::new(&f);
        let s1 = a.sigma(WeylElement::generator(Side::One));
        let image = a.weyl_action(Side::One, &s1).unwrap();
        let expected = a.sigma(WeylElement::generator(Side::Two)).sub(&s1);
        assert_eq!(image, expected);
        assert_eq!(a.weyl_action(Side::One, &image).unwrap(), s1);
    }

    #[test]
    fn hyperbolic_cap() {
        let f = Field::hyperbolic(num_rational::BigRational::from_integer(2.into())).unwrap();
        let a = UniversalAlgebra::with_cap(&f, 4);
        let u = WeylElement::ending(3, Side::One);
        assert!(matches!(a.mul_basis(&u, &u), Err(Error::CapExceeded { .. })));
    }
}
