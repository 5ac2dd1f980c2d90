//! The pre-ring `Ẑ/2 = {0, 1, ∞}` and the homology pre-rings of the
//! Grassmannians `X_l` and of the flag space `Fl(X)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::dihedral::{Dihedral, Side, WeylElement};
use crate::error::{Error, Result};

/// Element of `Ẑ/2 = Z/2 ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hat {
    Zero,
    One,
    Infinity,
}

impl Hat {
    /// Partial addition; `∞ + ∞` is undefined.
    pub fn add(self, other: Hat) -> Result<Hat> {
        match (self, other) {
            (Hat::Infinity, Hat::Infinity) => Err(Error::UndefinedSum),
            (Hat::Infinity, _) | (_, Hat::Infinity) => Ok(Hat::Infinity),
            (Hat::Zero, x) | (x, Hat::Zero) => Ok(x),
            (Hat::One, Hat::One) => Ok(Hat::Zero),
        }
    }

    /// Addition with `∞ + ∞ = ∞`, the value of any limit of positive sums.
    pub fn saturating_add(self, other: Hat) -> Hat {
        self.add(other).unwrap_or(Hat::Infinity)
    }

    pub fn mul(self, other: Hat) -> Hat {
        match (self, other) {
            (Hat::Zero, _) | (_, Hat::Zero) => Hat::Zero,
            (Hat::Infinity, _) | (_, Hat::Infinity) => Hat::Infinity,
            (Hat::One, Hat::One) => Hat::One,
        }
    }

    /// Cardinality class: 0, 1 or anything larger.
    pub fn from_count(count: usize) -> Hat {
        match count {
            0 => Hat::Zero,
            1 => Hat::One,
            _ => Hat::Infinity,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Hat::Zero => "0",
            Hat::One => "1",
            Hat::Infinity => "inf",
        }
    }
}

impl fmt::Display for Hat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Hat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Finitely supported class vector with pre-ring coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVector<K: Ord> {
    terms: BTreeMap<K, Hat>,
}

impl<K: Ord + Copy> Default for ClassVector<K> {
    fn default() -> Self {
        ClassVector { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Copy> ClassVector<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Hat) -> Self {
        let mut out = Self::zero();
        if c != Hat::Zero {
            out.terms.insert(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: K, c: Hat) -> Result<()> {
        let cur = self.terms.remove(&k).unwrap_or(Hat::Zero);
        let sum = cur.add(c)?;
        if sum != Hat::Zero {
            self.terms.insert(k, sum);
        }
        Ok(())
    }

    pub fn add_term_saturating(&mut self, k: K, c: Hat) {
        let cur = self.terms.remove(&k).unwrap_or(Hat::Zero);
        let sum = cur.saturating_add(c);
        if sum != Hat::Zero {
            self.terms.insert(k, sum);
        }
    }

    pub fn coeff(&self, k: &K) -> Hat {
        self.terms.get(k).copied().unwrap_or(Hat::Zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Hat)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: Hat) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            let y = x.mul(c);
            if y != Hat::Zero {
                out.terms.insert(*k, y);
            }
        }
        out
    }
}

pub type GrassVector = ClassVector<u32>;
pub type FlagVector = ClassVector<WeylElement>;

/// `H_*(X_l)` with basis `C_0, …, C_{n−1}`; `C_{n−1}` is the unit.
#[derive(Clone, Debug)]
pub struct GrassmannianPreRing {
    n: u32,
}

impl GrassmannianPreRing {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
        }
        Ok(GrassmannianPreRing { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn top(&self) -> u32 {
        self.n - 1
    }

    fn check(&self, r: u32) -> Result<()> {
        if r > self.top() {
            Err(Error::OutOfRange { degree: r, max: self.top() })
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, r1: u32, r2: u32) -> Result<GrassVector> {
        self.check(r1)?;
        self.check(r2)?;
        let d = self.top();
        if r1 == d {
            return Ok(GrassVector::single(r2, Hat::One));
        }
        if r2 == d {
            return Ok(GrassVector::single(r1, Hat::One));
        }
        let r3 = r1 as i64 + r2 as i64 - d as i64;
        Ok(match r3 {
            x if x < 0 => GrassVector::zero(),
            0 => GrassVector::single(0, Hat::One),
            x => GrassVector::single(x as u32, Hat::Infinity),
        })
    }

    pub fn mul_vec(&self, a: &GrassVector, b: &GrassVector) -> Result<GrassVector> {
        let mut out = GrassVector::zero();
        for (r1, x) in a.terms() {
            for (r2, y) in b.terms() {
                for (r, c) in self.mul(*r1, *r2)?.terms() {
                    out.add_term(*r, c.mul(x.mul(*y)))?;
                }
            }
        }
        Ok(out)
    }

    /// Left-to-right product of generators.
    pub fn product(&self, rs: &[u32]) -> Result<GrassVector> {
        let (first, rest) = rs
            .split_first()
            .ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
        self.check(*first)?;
        let mut acc = GrassVector::single(*first, Hat::One);
        for r in rest {
            acc = self.mul_vec(&acc, &GrassVector::single(*r, Hat::One))?;
        }
        Ok(acc)
    }
}

/// `H_*(Fl(X))` with basis `C_w`, `w ∈ I_2(n)`: `C_w = C_{ℓ(w), side(w)}`,
/// `C_1` the point class and `C_{w∘}` the unit.
#[derive(Clone, Debug)]
pub struct FlagPreRing {
    group: Dihedral,
    n: u32,
}

impl FlagPreRing {
    pub fn new(n: u32) -> Result<Self> {
        Ok(FlagPreRing { group: Dihedral::finite(n)?, n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn group(&self) -> &Dihedral {
        &self.group
    }

    /// The class `C_{r,l}` (a single class for `r ∈ {0, n}`).
    pub fn class(&self, r: u32, l: Side) -> Result<WeylElement> {
        if r > self.n {
            return Err(Error::OutOfRange { degree: r, max: self.n });
        }
        Ok(if r == self.n { self.group.longest().expect("finite") } else { WeylElement::ending(r, l) })
    }

    pub fn pd(&self, w: &WeylElement) -> WeylElement {
        self.group.pd(w)
    }

    pub fn mul(&self, x: &WeylElement, y: &WeylElement) -> Result<FlagVector> {
        self.group.validate(x)?;
        self.group.validate(y)?;
        let n = self.n;
        if x.len == n {
            return Ok(FlagVector::single(*y, Hat::One));
        }
        if y.len == n {
            return Ok(FlagVector::single(*x, Hat::One));
        }
        let r3 = x.len as i64 + y.len as i64 - n as i64;
        let same = x.side.is_some() && x.side == y.side;
        Ok(if same {
            if r3 <= 0 {
                FlagVector::zero()
            } else {
                FlagVector::single(WeylElement::ending(r3 as u32, x.side.expect("side")), Hat::Infinity)
            }
        } else {
            match r3 {
                r if r < 0 => FlagVector::zero(),
                0 => FlagVector::single(WeylElement::IDENTITY, Hat::One),
                r => {
                    let mut out = FlagVector::single(WeylElement::ending(r as u32, Side::One), Hat::Infinity);
                    out.add_term(WeylElement::ending(r as u32, Side::Two), Hat::Infinity)?;
                    out
                }
            }
        })
    }

    pub fn mul_vec(&self, a: &FlagVector, b: &FlagVector) -> Result<FlagVector> {
        let mut out = FlagVector::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                for (w, c) in self.mul(u, v)?.terms() {
                    out.add_term(*w, c.mul(x.mul(*y)))?;
                }
            }
        }
        Ok(out)
    }

    fn mul_vec_saturating(&self, a: &FlagVector, b: &FlagVector) -> Result<FlagVector> {
        let mut out = FlagVector::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                for (w, c) in self.mul(u, v)?.terms() {
                    out.add_term_saturating(*w, c.mul(x.mul(*y)));
                }
            }
        }
        Ok(out)
    }

    /// Left-to-right product of basis classes; coinciding infinite
    /// contributions saturate to `∞`.
    pub fn product(&self, ws: &[WeylElement]) -> Result<FlagVector> {
        let (first, rest) = ws
            .split_first()
            .ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
        let mut acc = FlagVector::single(*first, Hat::One);
        for w in rest {
            acc = self.mul_vec_saturating(&acc, &FlagVector::single(*w, Hat::One))?;
        }
        Ok(acc)
    }

    /// Pull-back `p_l^*: C_r ↦ C_{r+1, l}`.
    pub fn pullback(&self, l: Side, r: u32) -> Result<WeylElement> {
        if r + 1 > self.n {
            return Err(Error::OutOfRange { degree: r, max: self.n - 1 });
        }
        self.class(r + 1, l)
    }

    /// All `m`-tuples whose product is a nonzero multiple of the point class.
    pub fn enumerate_sigma(&self, m: usize, budget: usize) -> Result<Vec<Vec<WeylElement>>> {
        if m < 1 {
            return Err(Error::InvalidParameter("m must be positive".into()));
        }
        let elements = self.group.elements();
        let target = (m as u32 - 1) * self.n;
        let mut out = Vec::new();
        let mut visited = 0usize;
        let mut stack: Vec<WeylElement> = Vec::with_capacity(m);
        self.enumerate_rec(&elements, m, target, &mut stack, &mut out, &mut visited, budget)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_rec(
        &self,
        elements: &[WeylElement],
        m: usize,
        remaining: u32,
        stack: &mut Vec<WeylElement>,
        out: &mut Vec<Vec<WeylElement>>,
        visited: &mut usize,
        budget: usize,
    ) -> Result<()> {
        let slots_left = (m - stack.len()) as u32;
        if slots_left == 0 {
            *visited += 1;
            if *visited > budget {
                return Err(Error::BudgetExceeded(format!("more than {budget} candidate tuples")));
            }
            let p = self.product(stack)?;
            if p.terms().count() == 1 && p.coeff(&WeylElement::IDENTITY) != Hat::Zero {
                out.push(stack.clone());
            }
            return Ok(());
        }
        for w in elements {
            if w.len > remaining || remaining - w.len > (slots_left - 1) * self.n {
                continue;
            }
            stack.push(*w);
            self.enumerate_rec(elements, m, remaining - w.len, stack, out, visited, budget)?;
            stack.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hat_tables() {
        assert_eq!(Hat::One.mul(Hat::Infinity), Hat::Infinity);
        assert_eq!(Hat::Zero.mul(Hat::Infinity), Hat::Zero);
        assert_eq!(Hat::One.add(Hat::One).unwrap(), Hat::Zero);
        assert_eq!(Hat::Infinity.add(Hat::Infinity), Err(Error::UndefinedSum));
    }

    #[test]
    fn grassmannian_examples() {
        let g = GrassmannianPreRing::new(5).unwrap();
        assert_eq!(g.mul(3, 3).unwrap(), GrassVector::single(2, Hat::Infinity));
        assert_eq!(g.mul(1, 3).unwrap(), GrassVector::single(0, Hat::One));
        assert_eq!(g.mul(4, 2).unwrap(), GrassVector::single(2, Hat::One));
        assert!(matches!(g.mul(5, 0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn flag_examples() {
        let f = FlagPreRing::new(4).unwrap();
        let c31 = f.class(3, Side::One).unwrap();
        let c22 = f.class(2, Side::Two).unwrap();
        let p = f.mul(&c31, &c22).unwrap();
        assert_eq!(p.coeff(&WeylElement::ending(1, Side::One)), Hat::Infinity);
        assert_eq!(p.coeff(&WeylElement::ending(1, Side::Two)), Hat::Infinity);
        let c11 = f.class(1, Side::One).unwrap();
        let c32 = f.class(3, Side::Two).unwrap();
        assert_eq!(f.mul(&c11, &c32).unwrap(), FlagVector::single(WeylElement::IDENTITY, Hat::One));
    }

    #[test]
    fn sigma_pairs_are_poincare_dual() {
        let f = FlagPreRing::new(5).unwrap();
        let pairs = f.enumerate_sigma(2, 1 << 20).unwrap();
        assert_eq!(pairs.len(), 10);
        for p in pairs {
            assert_eq!(p[1], f.pd(&p[0]));
        }
    }
}
