//! The dihedral Weyl group `I_2(n)` (or the infinite dihedral group), its
//! canonical elements, relative lengths, plane action and the root-lattice
//! bracket `[w]_i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::One, Side::Two];

    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }

    /// 1 or 2.
    pub fn number(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }

    pub fn from_number(k: u8) -> Option<Side> {
        match k {
            1 => Some(Side::One),
            2 => Some(Side::Two),
            _ => None,
        }
    }

    fn idx(self) -> usize {
        self.number() as usize - 1
    }
}

/// Canonical form of a group element: its length and, for `0 < len < n`,
/// the last letter of its reduced word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    pub len: u32,
    #[serde(with = "side_serde")]
    pub side: Option<Side>,
}

mod side_serde {
    use super::Side;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(side: &Option<Side>, s: S) -> Result<S::Ok, S::Error> {
        match side {
            Some(x) => s.serialize_u8(x.number()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Side>, D::Error> {
        let v: Option<u8> = Option::deserialize(d)?;
        match v {
            None => Ok(None),
            Some(k) => Side::from_number(k).map(Some).ok_or_else(|| serde::de::Error::custom("side must be 1 or 2")),
        }
    }
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement { len: 0, side: None };

    pub fn generator(side: Side) -> WeylElement {
        WeylElement { len: 1, side: Some(side) }
    }

    /// Alternating word of length `len` ending in `side`.
    pub fn ending(len: u32, side: Side) -> WeylElement {
        if len == 0 {
            WeylElement::IDENTITY
        } else {
            WeylElement { len, side: Some(side) }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// Reduced word as a list of generators, left to right.
    pub fn word(&self) -> Vec<Side> {
        if self.len == 0 {
            return Vec::new();
        }
        // the longest element has two reduced words; use the one ending in s1
        let last = self.side.unwrap_or(Side::One);
        let mut out: Vec<Side> = (0..self.len)
            .map(|k| if k % 2 == 0 { last } else { last.other() })
            .collect();
        out.reverse();
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            None if self.len == 0 => write!(f, "1"),
            None => write!(f, "w0"),
            Some(_) => {
                let word: Vec<String> = self.word().iter().map(|s| format!("s{}", s.number())).collect();
                write!(f, "{}", word.join(""))
            }
        }
    }
}

/// Rotation by `2aπ/n` or reflection in the line at angle `aπ/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Motion {
    Rot(i64),
    Ref(i64),
}

pub type Vec2 = [FieldElement; 2];
pub type Mat2 = [[FieldElement; 2]; 2];

pub fn dot(a: &Vec2, b: &Vec2) -> FieldElement {
    &(&a[0] * &b[0]) + &(&a[1] * &b[1])
}

pub fn mat_vec(m: &Mat2, v: &Vec2) -> Vec2 {
    [
        &(&m[0][0] * &v[0]) + &(&m[0][1] * &v[1]),
        &(&m[1][0] * &v[0]) + &(&m[1][1] * &v[1]),
    ]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn vec_add(a: &Vec2, b: &Vec2) -> Vec2 {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

pub fn vec_sub(a: &Vec2, b: &Vec2) -> Vec2 {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub fn vec_scale(c: &FieldElement, a: &Vec2) -> Vec2 {
    [c * &a[0], c * &a[1]]
}

/// Coordinates `g1 α1 + g2 α2` in the root lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCoords(pub [FieldElement; 2]);

impl RootCoords {
    /// `|g1 α1 + g2 α2| = g1 + g2`.
    pub fn height(&self) -> FieldElement {
        &self.0[0] + &self.0[1]
    }
}

/// Roots, fundamental weights and chamber vertices in Cartesian coordinates.
#[derive(Clone, Debug)]
pub struct RootWeightFrame {
    pub alpha: [Vec2; 2],
    pub omega: [Vec2; 2],
    /// Root-to-weight conversion in the bases `(α1, α2)` and `(ω1, ω2)`;
    /// column `j` holds `ι(α_j)`.
    pub iota: Mat2,
    pub zeta: [Vec2; 2],
}

/// `I_2(n)` for finite `n`, or the infinite dihedral group.
#[derive(Clone, Debug)]
pub struct Dihedral {
    order: Option<u32>,
}

impl Dihedral {
    pub fn finite(n: u32) -> Result<Dihedral> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("dihedral order n = {n} must be at least 2")));
        }
        Ok(Dihedral { order: Some(n) })
    }

    pub fn infinite() -> Dihedral {
        Dihedral { order: None }
    }

    /// The group attached to a field: `n_t` of the field.
    pub fn for_field(field: &Field) -> Dihedral {
        Dihedral { order: field.n_t() }
    }

    pub fn n(&self) -> Option<u32> {
        self.order
    }

    fn n_or_panic(&self) -> u32 {
        self.order.expect("operation needs a finite dihedral group")
    }

    pub fn longest(&self) -> Option<WeylElement> {
        self.order.map(|n| WeylElement { len: n, side: None })
    }

    pub fn is_longest(&self, w: &WeylElement) -> bool {
        self.order == Some(w.len)
    }

    /// All `2n` elements sorted by length, side 1 before side 2.
    pub fn elements(&self) -> Vec<WeylElement> {
        self.elements_up_to(self.n_or_panic())
    }

    /// Elements of length at most `cap` (capped by `n` when finite).
    pub fn elements_up_to(&self, cap: u32) -> Vec<WeylElement> {
        let top = self.order.map_or(cap, |n| n.min(cap));
        let mut out = vec![WeylElement::IDENTITY];
        for len in 1..=top {
            if Some(len) == self.order {
                out.push(WeylElement { len, side: None });
            } else {
                out.push(WeylElement::ending(len, Side::One));
                out.push(WeylElement::ending(len, Side::Two));
            }
        }
        out
    }

    pub fn validate(&self, w: &WeylElement) -> Result<()> {
        let ok = match (self.order, w.side) {
            (_, None) => w.len == 0 || Some(w.len) == self.order,
            (Some(n), Some(_)) => w.len > 0 && w.len < n,
            (None, Some(_)) => w.len > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{w:?} is not a canonical element")))
        }
    }

    fn motion(&self, w: &WeylElement) -> Motion {
        let k = w.len as i64;
        let j = k / 2;
        let side = match w.side {
            Some(s) => s,
            None if k == 0 => return Motion::Rot(0),
            // longest element: any reduced word works
            None => Side::One,
        };
        match (side, k % 2) {
            (Side::One, 0) => Motion::Rot(j),
            (Side::One, _) => Motion::Ref(-j),
            (Side::Two, 0) => Motion::Rot(-j),
            (Side::Two, _) => Motion::Ref(j + 1),
        }
    }

    fn from_motion(&self, m: Motion) -> WeylElement {
        match self.order {
            Some(n) => {
                let n = n as i64;
                let (l1, l2) = match m {
                    Motion::Rot(a) => {
                        let a = a.rem_euclid(n);
                        if a == 0 {
                            return WeylElement::IDENTITY;
                        }
                        (2 * a, 2 * (n - a))
                    }
                    Motion::Ref(a) => (2 * (-a).rem_euclid(n) + 1, 2 * (a - 1).rem_euclid(n) + 1),
                };
                match l1.cmp(&l2) {
                    std::cmp::Ordering::Less => WeylElement::ending(l1 as u32, Side::One),
                    std::cmp::Ordering::Greater => WeylElement::ending(l2 as u32, Side::Two),
                    std::cmp::Ordering::Equal => WeylElement { len: n as u32, side: None },
                }
            }
            None => match m {
                Motion::Rot(0) => WeylElement::IDENTITY,
                Motion::Rot(a) if a > 0 => WeylElement::ending(2 * a as u32, Side::One),
                Motion::Rot(a) => WeylElement::ending((-2 * a) as u32, Side::Two),
                Motion::Ref(a) if a <= 0 => WeylElement::ending((1 - 2 * a) as u32, Side::One),
                Motion::Ref(a) => WeylElement::ending((2 * a - 1) as u32, Side::Two),
            },
        }
    }

    pub fn compose(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        let m = match (self.motion(u), self.motion(v)) {
            (Motion::Rot(a), Motion::Rot(b)) => Motion::Rot(a + b),
            (Motion::Rot(a), Motion::Ref(b)) => Motion::Ref(b + a),
            (Motion::Ref(a), Motion::Rot(b)) => Motion::Ref(a - b),
            (Motion::Ref(a), Motion::Ref(b)) => Motion::Rot(a - b),
        };
        self.from_motion(m)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let m = match self.motion(w) {
            Motion::Rot(a) => Motion::Rot(-a),
            r => r,
        };
        self.from_motion(m)
    }

    pub fn mul_gen(&self, w: &WeylElement, s: Side) -> WeylElement {
        self.compose(w, &WeylElement::generator(s))
    }

    /// `w∘ w`.
    pub fn pd(&self, w: &WeylElement) -> WeylElement {
        self.compose(&self.longest().expect("finite group"), w)
    }

    /// Is `w` in `W^(i)`, the minimal coset representatives for `⟨s_{3−i}⟩`?
    pub fn in_grassmannian(&self, w: &WeylElement, i: Side) -> bool {
        w.len == 0 || (w.side == Some(i) && Some(w.len) != self.order)
    }

    pub fn grassmannian_elements(&self, i: Side) -> Vec<WeylElement> {
        self.elements().into_iter().filter(|w| self.in_grassmannian(w, i)).collect()
    }

    /// Position (angle `jπ/n`, `j mod 2n`) of the apartment vertex `w(ζ_l)`.
    pub fn vertex_index(&self, w: &WeylElement, l: Side) -> i64 {
        let n = self.n_or_panic() as i64;
        let j0 = l.idx() as i64;
        let j = match self.motion(w) {
            Motion::Rot(a) => j0 + 2 * a,
            Motion::Ref(a) => 2 * a - j0,
        };
        j.rem_euclid(2 * n)
    }

    /// Relative length `ℓ_l(w)`: in the finite case the distance from
    /// `w(ζ_l)` to the base chamber on the `2n`-cycle.
    pub fn relative_length(&self, w: &WeylElement, l: Side) -> u32 {
        match self.order {
            Some(n) => {
                let j = self.vertex_index(w, l);
                let cyc = |a: i64, b: i64| {
                    let d = (a - b).rem_euclid(2 * n as i64);
                    d.min(2 * n as i64 - d)
                };
                cyc(j, 0).min(cyc(j, 1)) as u32
            }
            None => {
                if w.side == Some(l) {
                    w.len - 1
                } else {
                    w.len
                }
            }
        }
    }

    /// The element of `W^(i)` (or `1`) whose apartment vertex `w(ζ_{3-i})`
    /// sits at relative distance `r`.
    pub fn coset_representative(&self, l: Side, r: u32) -> WeylElement {
        WeylElement::ending(r, l.other())
    }

    /// Lengths `(ℓ(w), ℓ_l(w), w ∈ W^(1), w ∈ W^(2))`.
    pub fn length_stats(&self, w: &WeylElement, l: Side) -> (u32, u32, bool, bool) {
        (
            w.len,
            self.relative_length(w, l),
            self.in_grassmannian(w, Side::One),
            self.in_grassmannian(w, Side::Two),
        )
    }

    /// 2×2 matrix of `w` acting on the plane (finite case).
    pub fn matrix(&self, field: &Field, w: &WeylElement) -> Mat2 {
        match self.motion(w) {
            Motion::Rot(a) => {
                let c = field.cos_pi_n(2 * a);
                let s = field.sin_pi_n(2 * a);
                [[c.clone(), -&s], [s, c]]
            }
            Motion::Ref(a) => {
                let c = field.cos_pi_n(2 * a);
                let s = field.sin_pi_n(2 * a);
                [[c.clone(), s.clone()], [s, -c]]
            }
        }
    }

    pub fn act(&self, field: &Field, w: &WeylElement, v: &Vec2) -> Vec2 {
        mat_vec(&self.matrix(field, w), v)
    }

    /// `λ* = −w∘(λ)`.
    pub fn star(&self, field: &Field, v: &Vec2) -> Vec2 {
        let w0 = self.longest().expect("finite group");
        let x = self.act(field, &w0, v);
        [-&x[0], -&x[1]]
    }

    /// Chamber vertex directions `ζ_1 = (1, 0)`, `ζ_2 = (cos π/n, sin π/n)`.
    pub fn zeta(&self, field: &Field, l: Side) -> Vec2 {
        match l {
            Side::One => [field.one(), field.zero()],
            Side::Two => [field.cos_pi_n(1), field.sin_pi_n(1)],
        }
    }

    pub fn frame(&self, field: &Field) -> RootWeightFrame {
        let alpha = [
            [field.zero(), field.one()],
            [field.sin_pi_n(1), -field.cos_pi_n(1)],
        ];
        // ⟨ω_i, α_j^∨⟩ = δ_ij with α^∨ = 2α for unit roots
        let scale = (&field.int(2) * &field.sin_pi_n(1)).inverse();
        let zeta = [self.zeta(field, Side::One), self.zeta(field, Side::Two)];
        let omega = [vec_scale(&scale, &zeta[1]), vec_scale(&scale, &zeta[0])];
        let tau = field.tau();
        let iota = [[field.int(2), -&tau], [-&tau, field.int(2)]];
        RootWeightFrame { alpha, omega, iota, zeta }
    }

    /// `s_a` on root coordinates: `s_a(α_a) = −α_a`, `s_a(α_b) = α_b + [2]_t α_a`.
    pub fn reflect_root(&self, field: &Field, a: Side, v: &RootCoords) -> RootCoords {
        let (ia, ib) = (a.idx(), a.other().idx());
        let mut out = v.0.clone();
        out[ia] = &(&field.tau() * &v.0[ib]) - &v.0[ia];
        out[ib] = v.0[ib].clone();
        RootCoords(out)
    }

    /// `[w]_i` by the recursion `[s_j w]_i = δ_ij α_i + s_j([w]_i)`.
    pub fn bracket(&self, field: &Field, w: &WeylElement, i: Side) -> RootCoords {
        let mut acc = RootCoords([field.zero(), field.zero()]);
        for letter in w.word().iter().rev() {
            acc = self.reflect_root(field, *letter, &acc);
            if *letter == i {
                acc.0[i.idx()] = &acc.0[i.idx()] + &field.one();
            }
        }
        acc
    }

    /// `Φ_i(w) = |[w]_i|`.
    pub fn phi_side(&self, field: &Field, w: &WeylElement, i: Side) -> FieldElement {
        self.bracket(field, w, i).height()
    }

    /// `Φ(w) = Φ_1(w) + Φ_2(w)`.
    pub fn phi(&self, field: &Field, w: &WeylElement) -> FieldElement {
        &self.phi_side(field, w, Side::One) + &self.phi_side(field, w, Side::Two)
    }

    /// Triple `([w]_i, Φ_i(w), Φ(w))`.
    pub fn bracket_and_phi(&self, field: &Field, w: &WeylElement, i: Side) -> (RootCoords, FieldElement, FieldElement) {
        let b = self.bracket(field, w, i);
        let pi = b.height();
        (b, pi, self.phi(field, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_generators() {
        let g = Dihedral::finite(3).unwrap();
        let s1 = WeylElement::generator(Side::One);
        let s2 = WeylElement::generator(Side::Two);
        assert_eq!(g.compose(&s1, &s1), WeylElement::IDENTITY);
        // s1 · s2s1 = s1s2s1 = w∘
        let s2s1 = WeylElement::ending(2, Side::One);
        assert_eq!(g.compose(&s1, &s2s1), g.longest().unwrap());
        let s1s2 = WeylElement::ending(2, Side::Two);
        assert_eq!(g.compose(&s2s1, &s1s2), WeylElement::IDENTITY);
        assert_eq!(g.compose(&s1, &s2), s1s2);
    }

    #[test]
    fn words_round_trip() {
        let g = Dihedral::finite(5).unwrap();
        for w in g.elements() {
            let folded = w
                .word()
                .iter()
                .fold(WeylElement::IDENTITY, |acc, s| g.mul_gen(&acc, *s));
            assert_eq!(folded, w, "{w}");
        }
    }

    #[test]
    fn relative_lengths() {
        let g = Dihedral::finite(3).unwrap();
        let s2 = WeylElement::generator(Side::Two);
        assert_eq!(g.relative_length(&s2, Side::One), 1);
        assert_eq!(g.relative_length(&g.longest().unwrap(), Side::One), 2);
        assert_eq!(g.relative_length(&WeylElement::IDENTITY, Side::Two), 0);
    }

    #[test]
    fn star_swaps_for_odd_n() {
        let f = Field::cyclotomic(3).unwrap();
        let g = Dihedral::finite(3).unwrap();
        let z1 = g.zeta(&f, Side::One);
        assert_eq!(g.star(&f, &z1), g.zeta(&f, Side::Two));
    }

    #[test]
    fn phi_values_n3() {
        let f = Field::cyclotomic(3).unwrap();
        let g = Dihedral::finite(3).unwrap();
        let by_len: Vec<FieldElement> = [0u32, 1, 2, 3]
            .iter()
            .map(|&k| {
                let w = g.elements().into_iter().find(|w| w.len == k).unwrap();
                g.phi(&f, &w)
            })
            .collect();
        assert_eq!(by_len, vec![f.int(0), f.int(1), f.int(3), f.int(4)]);
    }

    #[test]
    fn infinite_group_composition() {
        let g = Dihedral::infinite();
        let w = WeylElement::ending(5, Side::One);
        assert_eq!(g.compose(&w, &g.inverse(&w)), WeylElement::IDENTITY);
        assert_eq!(g.mul_gen(&w, Side::Two), WeylElement::ending(6, Side::Two));
        assert_eq!(g.mul_gen(&w, Side::One), WeylElement::ending(4, Side::Two));
    }
}
