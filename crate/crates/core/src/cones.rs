//! Stability inequality systems (WTI, STI, K_m, Belkale–Kumar), exact
//! membership, LP certificates for implication and irredundancy, and the Θ
//! correspondence.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use crate::algebra::UniversalAlgebra;
use crate::dihedral::{Dihedral, Side, Vec2, WeylElement};
use crate::error::{Error, Result};
use crate::field::{parse_rational, rational_string, Field, FieldElement};
use crate::filtration::{gr_mul, ConcaveWeighting};
use crate::lp::{self, LpStatus};
use crate::prering::FlagPreRing;

/// Default cap on enumerated tuples.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Wti,
    Sti,
    Km,
    Bk,
    Oracle,
}

/// Where an inequality came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Tag {
    pub system: SystemKind,
    #[serde(serialize_with = "serialize_side")]
    pub l: Option<Side>,
    pub tuple: Vec<WeylElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slots: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn serialize_side<S: serde::Serializer>(side: &Option<Side>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match side {
        Some(x) => s.serialize_u8(x.number()),
        None => s.serialize_none(),
    }
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.system {
            SystemKind::Wti => "WTI",
            SystemKind::Sti => "STI",
            SystemKind::Km => "K",
            SystemKind::Bk => "BK",
            SystemKind::Oracle => "oracle",
        };
        write!(f, "{kind}")?;
        if let Some(l) = self.l {
            write!(f, "[l={}]", l.number())?;
        }
        if !self.tuple.is_empty() {
            let t: Vec<String> = self.tuple.iter().map(|w| w.to_string()).collect();
            write!(f, "({})", t.join(", "))?;
        }
        if let Some(label) = &self.label {
            write!(f, " {label}")?;
        }
        Ok(())
    }
}

/// `Σ_k ⟨g_k, λ_k⟩ ≤ 0`, stored both with Cartesian covectors `g_k` and in
/// ray coordinates `λ_k = a_k ζ_1 + b_k ζ_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInequality {
    pub covectors: Vec<Vec2>,
    pub ray: Vec<FieldElement>,
    pub tag: Tag,
}

impl LinearInequality {
    pub fn slots(&self) -> usize {
        self.covectors.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "tag": self.tag,
            "covectors": self.covectors.iter().map(|g| json!([g[0].to_json(), g[1].to_json()])).collect::<Vec<_>>(),
            "ray": self.ray.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Exact plane geometry of the chamber shared by all systems for a given `n`.
#[derive(Clone, Debug)]
pub struct ConeGeometry {
    field: Field,
    group: Dihedral,
    n: u32,
    /// Unit vectors at angles `jπ/n`, `j < 2n`.
    vertices: Vec<Vec2>,
    /// Ray coordinates of the pairing with each vertex vector.
    vertex_rays: Vec<[FieldElement; 2]>,
    zeta: [Vec2; 2],
    star_swaps: bool,
}

impl ConeGeometry {
    pub fn new(n: u32) -> Result<ConeGeometry> {
        let field = Field::cyclotomic(n)?;
        let group = Dihedral::finite(n)?;
        let vertices: Vec<Vec2> = (0..2 * n as i64).map(|j| [field.cos_pi_n(j), field.sin_pi_n(j)]).collect();
        let vertex_rays = (0..2 * n as i64).map(|j| [field.cos_pi_n(j), field.cos_pi_n(j - 1)]).collect();
        let zeta = [group.zeta(&field, Side::One), group.zeta(&field, Side::Two)];
        let star_swaps = group.star(&field, &zeta[0]) == zeta[1];
        Ok(ConeGeometry { field, group, n, vertices, vertex_rays, zeta, star_swaps })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn group(&self) -> &Dihedral {
        &self.group
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Does `λ ↦ λ*` exchange the two rays of the chamber?
    pub fn star_swaps(&self) -> bool {
        self.star_swaps
    }

    /// Index `j` with `w(ζ_l)` at angle `jπ/n`.
    pub fn vertex(&self, w: &WeylElement, l: Side) -> usize {
        self.group.vertex_index(w, l) as usize
    }

    /// `Σ_k sign_k ⟨λ_k, e_{j_k}⟩ ≤ 0`.
    fn from_vertices(&self, terms: &[(bool, usize)], tag: Tag) -> LinearInequality {
        let mut covectors = Vec::with_capacity(terms.len());
        let mut ray = Vec::with_capacity(2 * terms.len());
        for &(positive, j) in terms {
            let (v, r) = (&self.vertices[j], &self.vertex_rays[j]);
            if positive {
                covectors.push(v.clone());
                ray.extend(r.iter().cloned());
            } else {
                covectors.push([-&v[0], -&v[1]]);
                ray.extend(r.iter().map(|x| -x));
            }
        }
        LinearInequality { covectors, ray, tag }
    }

    /// Builds an inequality from ray-coordinate coefficients.
    pub fn from_ray(&self, ray: Vec<FieldElement>, tag: Tag) -> LinearInequality {
        // ⟨g, ζ_1⟩ = p and ⟨g, ζ_2⟩ = q
        let (c, s) = (self.field.cos_pi_n(1), self.field.sin_pi_n(1));
        let covectors = ray
            .chunks(2)
            .map(|pq| {
                let gy = &(&pq[1] - &(&pq[0] * &c)) / &s;
                [pq[0].clone(), gy]
            })
            .collect();
        LinearInequality { covectors, ray, tag }
    }

    /// Cartesian vector of a dominant weight.
    pub fn cartesian(&self, w: &DominantWeight) -> Vec2 {
        let (a, b) = (self.field.rational(&w.a), self.field.rational(&w.b));
        [&(&a * &self.zeta[0][0]) + &(&b * &self.zeta[1][0]), &(&a * &self.zeta[0][1]) + &(&b * &self.zeta[1][1])]
    }
}

/// `λ = a ζ_1 + b ζ_2` with rational ray coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominantWeight {
    pub a: BigRational,
    pub b: BigRational,
}

impl DominantWeight {
    pub fn new(a: BigRational, b: BigRational) -> DominantWeight {
        DominantWeight { a, b }
    }

    pub fn ints(a: i64, b: i64) -> DominantWeight {
        DominantWeight { a: BigRational::from_integer(a.into()), b: BigRational::from_integer(b.into()) }
    }

    pub fn zero() -> DominantWeight {
        Self::ints(0, 0)
    }

    pub fn is_dominant(&self) -> bool {
        !self.a.is_negative() && !self.b.is_negative()
    }

    pub fn is_regular(&self) -> bool {
        self.a.is_positive() && self.b.is_positive()
    }

    pub fn scaled(&self, k: &BigRational) -> DominantWeight {
        DominantWeight { a: &self.a * k, b: &self.b * k }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!([rational_string(&self.a), rational_string(&self.b)])
    }

    /// Reads `[a, b]` with entries given as integers or `"p/q"` strings.
    pub fn from_json(value: &serde_json::Value) -> Result<DominantWeight> {
        let bad = || Error::InvalidParameter(format!("weight {value} is not a pair of rationals"));
        let entry = |v: &serde_json::Value| match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(x) => x.as_i64().map(|i| BigRational::from_integer(i.into())),
            _ => None,
        };
        match value.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok(DominantWeight::new(entry(a).ok_or_else(bad)?, entry(b).ok_or_else(bad)?)),
            _ => Err(bad()),
        }
    }
}

/// Reads a JSON list of weights.
pub fn point_from_json(value: &serde_json::Value) -> Result<ConePoint> {
    value
        .as_array()
        .ok_or_else(|| Error::InvalidParameter("a point is a list of weights".into()))?
        .iter()
        .map(DominantWeight::from_json)
        .collect()
}

/// A point of `Δ^k` in ray coordinates.
pub type ConePoint = Vec<DominantWeight>;

/// Applies `λ ↦ λ*` to the first `count` slots.
pub fn star_slots(geometry: &ConeGeometry, point: &[DominantWeight], count: usize) -> ConePoint {
    point
        .iter()
        .enumerate()
        .map(|(k, w)| {
            if k < count && geometry.star_swaps() {
                DominantWeight { a: w.b.clone(), b: w.a.clone() }
            } else {
                w.clone()
            }
        })
        .collect()
}

/// `Θ(λ_1, …, λ_m; μ) = (λ_1*, …, λ_m*, μ)`.
pub fn theta(geometry: &ConeGeometry, point: &[DominantWeight]) -> ConePoint {
    star_slots(geometry, point, point.len().saturating_sub(1))
}

/// Deduplicated list of inequalities over `Δ^slots`.
#[derive(Clone, Debug)]
pub struct InequalitySystem {
    geometry: ConeGeometry,
    slots: usize,
    inequalities: Vec<LinearInequality>,
    generated: usize,
    index: HashMap<Vec<FieldElement>, usize>,
}

fn normalize(ray: &[FieldElement], cache: &mut HashMap<FieldElement, FieldElement>) -> Vec<FieldElement> {
    let Some(first) = ray.iter().find(|x| !x.is_zero()) else {
        return ray.to_vec();
    };
    let abs = if first.sign() < 0 { -first } else { first.clone() };
    if abs.is_one() {
        return ray.to_vec();
    }
    let inv = cache.entry(abs.clone()).or_insert_with(|| abs.inverse()).clone();
    ray.iter().map(|x| x * &inv).collect()
}

impl InequalitySystem {
    pub fn new(geometry: &ConeGeometry, slots: usize) -> InequalitySystem {
        InequalitySystem { geometry: geometry.clone(), slots, inequalities: Vec::new(), generated: 0, index: HashMap::new() }
    }

    /// Collects inequalities, dropping positive multiples of earlier ones.
    pub fn from_inequalities(
        geometry: &ConeGeometry,
        slots: usize,
        items: impl IntoIterator<Item = LinearInequality>,
    ) -> InequalitySystem {
        let mut sys = Self::new(geometry, slots);
        let mut cache = HashMap::new();
        for ineq in items {
            sys.generated += 1;
            debug_assert_eq!(ineq.slots(), slots);
            let key = normalize(&ineq.ray, &mut cache);
            if let std::collections::hash_map::Entry::Vacant(e) = sys.index.entry(key) {
                e.insert(sys.inequalities.len());
                sys.inequalities.push(ineq);
            }
        }
        sys
    }

    pub fn geometry(&self) -> &ConeGeometry {
        &self.geometry
    }

    pub fn n(&self) -> u32 {
        self.geometry.n
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    /// Number of inequalities before deduplication.
    pub fn generated(&self) -> usize {
        self.generated
    }

    pub fn inequalities(&self) -> &[LinearInequality] {
        &self.inequalities
    }

    /// Index of a positive multiple of `ray`, if present.
    pub fn find(&self, ray: &[FieldElement]) -> Option<usize> {
        self.index.get(&normalize(ray, &mut HashMap::new())).copied()
    }

    pub fn merged(&self, other: &InequalitySystem) -> InequalitySystem {
        Self::from_inequalities(
            &self.geometry,
            self.slots,
            self.inequalities.iter().chain(other.inequalities.iter()).cloned(),
        )
    }

    /// Set of normalized ray vectors.
    pub fn scalar_set(&self) -> HashSet<Vec<FieldElement>> {
        self.index.keys().cloned().collect()
    }

    /// Image of the solution cone under a slot-wise star on the first
    /// `count` slots (an involution).
    pub fn pushforward_star(&self, count: usize) -> InequalitySystem {
        if !self.geometry.star_swaps {
            return self.clone();
        }
        let items = self.inequalities.iter().map(|q| {
            let mut ray = q.ray.clone();
            for k in 0..count.min(self.slots) {
                ray.swap(2 * k, 2 * k + 1);
            }
            self.geometry.from_ray(ray, q.tag.clone())
        });
        Self::from_inequalities(&self.geometry, self.slots, items)
    }

    /// Image under `Θ`.
    pub fn pushforward_theta(&self) -> InequalitySystem {
        self.pushforward_star(self.slots - 1)
    }

    /// Image under a permutation of the slots: slot `k` moves to `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> InequalitySystem {
        let items = self.inequalities.iter().map(|q| {
            let mut ray = q.ray.clone();
            for (k, &p) in perm.iter().enumerate() {
                ray[2 * p] = q.ray[2 * k].clone();
                ray[2 * p + 1] = q.ray[2 * k + 1].clone();
            }
            self.geometry.from_ray(ray, q.tag.clone())
        });
        Self::from_inequalities(&self.geometry, self.slots, items)
    }

    pub fn ray_rows(&self) -> Vec<Vec<FieldElement>> {
        self.inequalities.iter().map(|q| q.ray.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n(),
            "m": self.slots,
            "field": self.geometry.field.descriptor().to_json(),
            "generated": self.generated,
            "inequalities": self.inequalities.iter().map(|q| q.to_json()).collect::<Vec<_>>(),
        })
    }

    /// One line per inequality in ray coordinates `λ_k = a_k ζ_1 + b_k ζ_2`.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for q in &self.inequalities {
            let mut lhs = String::new();
            for (k, c) in q.ray.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let var = if k % 2 == 0 { format!("a_{{{}}}", k / 2 + 1) } else { format!("b_{{{}}}", k / 2 + 1) };
                let (neg, mag) = match c.as_rational() {
                    Some(r) => (r.is_negative(), field_magnitude(&r.abs())),
                    None => (false, format!("({})", c.to_latex())),
                };
                match (lhs.is_empty(), neg) {
                    (true, true) => lhs.push('-'),
                    (true, false) => {}
                    (false, true) => lhs.push_str(" - "),
                    (false, false) => lhs.push_str(" + "),
                }
                lhs.push_str(&mag);
                lhs.push_str(&var);
            }
            if lhs.is_empty() {
                lhs.push('0');
            }
            out.push_str(&format!("{lhs} \\le 0 \\quad % {}\n", q.tag));
        }
        out
    }
}

fn field_magnitude(r: &BigRational) -> String {
    if r.is_one() {
        String::new()
    } else if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn check_m(m: usize, min: usize) -> Result<()> {
    if m < min {
        Err(Error::InvalidParameter(format!("m = {m} must be at least {min}")))
    } else {
        Ok(())
    }
}

/// The tuple form: for `l`, slots `i < j` and `r_i + r_j = n − 1`, all other
/// slots `w∘`: `Σ_k ⟨λ_k, w_k(ζ_l)⟩ ≤ 0`.
pub fn wti_tuple_form(geometry: &ConeGeometry, m: usize) -> Result<InequalitySystem> {
    check_m(m, 2)?;
    let n = geometry.n;
    let group = &geometry.group;
    let w0 = group.longest().expect("finite");
    let mut items = Vec::new();
    for l in Side::BOTH {
        for i in 0..m {
            for j in i + 1..m {
                for r in 0..n {
                    let mut tuple = vec![w0; m];
                    tuple[i] = group.coset_representative(l, r);
                    tuple[j] = group.coset_representative(l, n - 1 - r);
                    let terms: Vec<(bool, usize)> = tuple.iter().map(|w| (true, geometry.vertex(w, l))).collect();
                    let tag = Tag { system: SystemKind::Wti, l: Some(l), tuple, slots: Some((i, j)), label: None };
                    items.push(geometry.from_vertices(&terms, tag));
                }
            }
        }
    }
    Ok(InequalitySystem::from_inequalities(geometry, m, items))
}

/// The form `w(λ_i − λ_j*) ≤_{Δ*} Σ_{k≠i,j} λ_k*` over `w ∈ W`, ordered
/// `i ≠ j`, paired with `ζ_1` and `ζ_2`.
pub fn wti_w_form(geometry: &ConeGeometry, m: usize) -> Result<InequalitySystem> {
    check_m(m, 2)?;
    let group = &geometry.group;
    let w0 = group.longest().expect("finite");
    let mut items = Vec::new();
    for w in group.elements() {
        let winv = group.inverse(&w);
        let w0winv = group.compose(&w0, &winv);
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                for l in Side::BOTH {
                    // ⟨wλ, ζ⟩ = ⟨λ, w⁻¹ζ⟩ and ⟨λ*, v⟩ = −⟨λ, w∘v⟩
                    let mut tuple = vec![w0; m];
                    tuple[i] = winv;
                    tuple[j] = w0winv;
                    let terms: Vec<(bool, usize)> = tuple.iter().map(|x| (true, geometry.vertex(x, l))).collect();
                    let tag = Tag {
                        system: SystemKind::Wti,
                        l: Some(l),
                        tuple,
                        slots: Some((i, j)),
                        label: Some(format!("w = {w}")),
                    };
                    items.push(geometry.from_vertices(&terms, tag));
                }
            }
        }
    }
    Ok(InequalitySystem::from_inequalities(geometry, m, items))
}

/// Result of `gen_wti`: the deduplicated system plus the consistency data.
#[derive(Clone, Debug)]
pub struct WtiSystem {
    pub system: InequalitySystem,
    pub forms_agree: bool,
    /// `2 n (m choose 2)` tuple inequalities before deduplication.
    pub tuple_count: usize,
}

pub fn gen_wti(n: u32, m: usize) -> Result<WtiSystem> {
    let geometry = ConeGeometry::new(n)?;
    let tuple = wti_tuple_form(&geometry, m)?;
    let wform = wti_w_form(&geometry, m)?;
    let forms_agree = tuple.scalar_set() == wform.scalar_set();
    Ok(WtiSystem { tuple_count: tuple.generated(), system: tuple, forms_agree })
}

/// `Σ_i ⟨λ_i, u_i(ζ_l)⟩ ≤ 0` over `(u_i) ∈ Σ_{A,m}`, `l = 1, 2`.
pub fn gen_sti(n: u32, m: usize, budget: usize) -> Result<InequalitySystem> {
    check_m(m, 2)?;
    let geometry = ConeGeometry::new(n)?;
    let flag = FlagPreRing::new(n)?;
    let tuples = flag.enumerate_sigma(m, budget)?;
    let mut items = Vec::new();
    for tuple in tuples {
        for l in Side::BOTH {
            let terms: Vec<(bool, usize)> = tuple.iter().map(|u| (true, geometry.vertex(u, l))).collect();
            let tag = Tag { system: SystemKind::Sti, l: Some(l), tuple: tuple.clone(), slots: None, label: None };
            items.push(geometry.from_vertices(&terms, tag));
        }
    }
    Ok(InequalitySystem::from_inequalities(&geometry, m, items))
}

/// Algebras whose structure constants define `K_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KmAlgebra {
    At,
    GrAt,
    B(Side),
    GrB(Side),
    /// `K_m(B^(1)) ∩ K_m(B^(2))`.
    BIntersection,
    /// `K_m(gr B^(1)) ∩ K_m(gr B^(2))`.
    GrBIntersection,
}

impl KmAlgebra {
    pub fn parse(s: &str) -> Option<KmAlgebra> {
        Some(match s {
            "at" => KmAlgebra::At,
            "gr" | "grat" => KmAlgebra::GrAt,
            "b1" => KmAlgebra::B(Side::One),
            "b2" => KmAlgebra::B(Side::Two),
            "grb1" => KmAlgebra::GrB(Side::One),
            "grb2" => KmAlgebra::GrB(Side::Two),
            "b" => KmAlgebra::BIntersection,
            "grb" => KmAlgebra::GrBIntersection,
            _ => return None,
        })
    }
}

/// Support table of a based algebra: basis and `supp(b_u b_v)` as bitmasks.
struct SupportTable {
    basis: Vec<WeylElement>,
    table: Vec<Vec<u64>>,
}

impl SupportTable {
    fn build(algebra: &UniversalAlgebra, kind: KmAlgebra) -> Result<SupportTable> {
        let basis = match kind {
            KmAlgebra::At | KmAlgebra::GrAt => algebra.basis(),
            KmAlgebra::B(i) | KmAlgebra::GrB(i) => algebra.grassmannian_basis(i),
            _ => return Err(Error::InvalidParameter("intersections have no single support table".into())),
        };
        let weighting = match kind {
            KmAlgebra::GrAt => Some(ConcaveWeighting::full(algebra)),
            KmAlgebra::GrB(i) => Some(ConcaveWeighting::side(algebra, i)),
            _ => None,
        };
        let pos: HashMap<WeylElement, usize> = basis.iter().enumerate().map(|(k, w)| (*w, k)).collect();
        let mut table = vec![vec![0u64; basis.len()]; basis.len()];
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let product = match &weighting {
                    Some(wt) => gr_mul(u, v, wt)?,
                    None => algebra.mul_basis(u, v)?,
                };
                for (w, _) in product.terms() {
                    let k = pos
                        .get(w)
                        .ok_or_else(|| Error::Domain(format!("{u}·{v} leaves the basis at {w}")))?;
                    table[a][b] |= 1 << k;
                }
            }
        }
        Ok(SupportTable { basis, table })
    }

    /// Every `(x_1, …, x_m; y)` with `c^y_{x⃗} ≠ 0`. All structure constants
    /// are nonnegative at `t = e^{iπ/n}`, so supports compose without
    /// cancellation.
    fn nonzero_tuples(&self, m: usize, budget: usize) -> Result<Vec<(Vec<usize>, usize)>> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(m);
        self.rec(m, 0, &mut stack, &mut out, budget)?;
        Ok(out)
    }

    fn rec(&self, m: usize, mask: u64, stack: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, usize)>, budget: usize) -> Result<()> {
        if stack.len() == m {
            for y in 0..self.basis.len() {
                if mask >> y & 1 == 1 {
                    out.push((stack.clone(), y));
                    if out.len() > budget {
                        return Err(Error::BudgetExceeded(format!("more than {budget} nonzero structure constants")));
                    }
                }
            }
            return Ok(());
        }
        for x in 0..self.basis.len() {
            let next = if stack.is_empty() {
                1u64 << x
            } else {
                (0..self.basis.len())
                    .filter(|y| mask >> y & 1 == 1)
                    .fold(0u64, |acc, y| acc | self.table[y][x])
            };
            if next == 0 {
                continue;
            }
            stack.push(x);
            self.rec(m, next, stack, out, budget)?;
            stack.pop();
        }
        Ok(())
    }
}

fn km_single(
    geometry: &ConeGeometry,
    algebra: &UniversalAlgebra,
    kind: KmAlgebra,
    m: usize,
    pairings: &[Side],
    system: SystemKind,
    budget: usize,
) -> Result<Vec<LinearInequality>> {
    let table = SupportTable::build(algebra, kind)?;
    let mut seen = HashSet::new();
    let mut items = Vec::new();
    for (xs, y) in table.nonzero_tuples(m, budget)? {
        for &l in pairings {
            // y(μ) ⪯ Σ x_i(λ_i) paired with ζ_l: ⟨μ, yζ_l⟩ − Σ ⟨λ_i, x_iζ_l⟩ ≤ 0
            let mut terms: Vec<(bool, usize)> = xs.iter().map(|&x| (false, geometry.vertex(&table.basis[x], l))).collect();
            terms.push((true, geometry.vertex(&table.basis[y], l)));
            if !seen.insert(terms.clone()) {
                continue;
            }
            let mut tuple: Vec<WeylElement> = xs.iter().map(|&x| table.basis[x]).collect();
            tuple.push(table.basis[y]);
            let tag = Tag { system, l: Some(l), tuple, slots: None, label: None };
            items.push(geometry.from_vertices(&terms, tag));
        }
    }
    Ok(items)
}

/// `K_m(A)` on `(λ_1, …, λ_m; μ)`: `⟨μ, y(ζ_l)⟩ ≤ Σ_i ⟨λ_i, x_i(ζ_l)⟩` for
/// every nonzero `c^y_{x_1…x_m}` and `l = 1, 2`.
pub fn gen_km(kind: KmAlgebra, n: u32, m: usize, budget: usize) -> Result<InequalitySystem> {
    check_m(m, 1)?;
    let geometry = ConeGeometry::new(n)?;
    let algebra = UniversalAlgebra::new(geometry.field());
    let both = [Side::One, Side::Two];
    let items = match kind {
        KmAlgebra::BIntersection => {
            let mut v = km_single(&geometry, &algebra, KmAlgebra::B(Side::One), m, &both, SystemKind::Km, budget)?;
            v.extend(km_single(&geometry, &algebra, KmAlgebra::B(Side::Two), m, &both, SystemKind::Km, budget)?);
            v
        }
        KmAlgebra::GrBIntersection => {
            let mut v = km_single(&geometry, &algebra, KmAlgebra::GrB(Side::One), m, &both, SystemKind::Km, budget)?;
            v.extend(km_single(&geometry, &algebra, KmAlgebra::GrB(Side::Two), m, &both, SystemKind::Km, budget)?);
            v
        }
        single => km_single(&geometry, &algebra, single, m, &both, SystemKind::Km, budget)?,
    };
    Ok(InequalitySystem::from_inequalities(&geometry, m + 1, items))
}

/// Belkale–Kumar inequalities: `gr B^(k)` paired with `ζ_{3−k}`, `k = 1, 2`.
pub fn gen_bk(n: u32, m: usize, budget: usize) -> Result<InequalitySystem> {
    check_m(m, 1)?;
    let geometry = ConeGeometry::new(n)?;
    let algebra = UniversalAlgebra::new(geometry.field());
    let mut items = Vec::new();
    for k in Side::BOTH {
        items.extend(km_single(&geometry, &algebra, KmAlgebra::GrB(k), m, &[k.other()], SystemKind::Bk, budget)?);
    }
    Ok(InequalitySystem::from_inequalities(&geometry, m + 1, items))
}

/// The product of two A₁ triangle-inequality systems, coded directly in ray
/// coordinates (`n = 2`).
pub fn a1_oracle(m: usize) -> Result<InequalitySystem> {
    check_m(m, 2)?;
    let geometry = ConeGeometry::new(2)?;
    let f = geometry.field().clone();
    let mut items = Vec::new();
    for coord in 0..2 {
        for i in 0..m {
            let mut ray = vec![f.zero(); 2 * m];
            for k in 0..m {
                ray[2 * k + coord] = if k == i { f.one() } else { -f.one() };
            }
            let name = if coord == 0 { "a" } else { "b" };
            let tag = Tag {
                system: SystemKind::Oracle,
                l: None,
                tuple: Vec::new(),
                slots: None,
                label: Some(format!("{name}_{} <= sum of the others", i + 1)),
            };
            items.push(geometry.from_ray(ray, tag));
        }
    }
    Ok(InequalitySystem::from_inequalities(&geometry, m, items))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub violations: usize,
    pub violated: Option<Tag>,
    pub tight: usize,
}

fn point_values(field: &Field, point: &[DominantWeight]) -> Vec<FieldElement> {
    point.iter().flat_map(|w| [field.rational(&w.a), field.rational(&w.b)]).collect()
}

fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = a[0].field().zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Exact membership; slots must be dominant.
pub fn is_member(point: &[DominantWeight], system: &InequalitySystem) -> Result<Membership> {
    if point.len() != system.slots {
        return Err(Error::InvalidParameter(format!("expected {} slots, got {}", system.slots, point.len())));
    }
    if let Some(slot) = point.iter().position(|w| !w.is_dominant()) {
        return Err(Error::NotDominant { slot });
    }
    let x = point_values(system.geometry.field(), point);
    let mut out = Membership { member: true, violations: 0, violated: None, tight: 0 };
    for q in &system.inequalities {
        match dot(&q.ray, &x).sign() {
            1 => {
                out.violations += 1;
                if out.member {
                    out.member = false;
                    out.violated = Some(q.tag.clone());
                }
            }
            0 => out.tight += 1,
            _ => {}
        }
    }
    Ok(out)
}

/// Outcome of testing whether a system implies an inequality over the
/// dominant cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A positive multiple of the inequality is in the system.
    Present { index: usize },
    /// `h ≤ Σ y_j a_j` coordinatewise with `y ≥ 0`; empty means dominance alone.
    Implied { multipliers: Vec<(usize, FieldElement)> },
    /// The system cuts `Δ^k` down to `{0}`.
    Trivial,
    /// A dominant `x` with `a_j·x ≤ 0` for all `j` and `h·x > 0`.
    NotImplied { witness: Vec<FieldElement>, value: FieldElement },
}

impl Certificate {
    pub fn implied(&self) -> bool {
        !matches!(self, Certificate::NotImplied { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Certificate::Present { index } => json!({"kind": "present", "index": index}),
            Certificate::Implied { multipliers } => json!({
                "kind": "farkas",
                "multipliers": multipliers.iter().map(|(j, y)| json!([j, y.to_json()])).collect::<Vec<_>>(),
            }),
            Certificate::Trivial => json!({"kind": "trivial"}),
            Certificate::NotImplied { witness, value } => json!({
                "kind": "witness",
                "point": witness.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
                "value": value.to_json(),
            }),
        }
    }
}

/// Rows of a system with one float copy kept for guidance.
pub struct LpRows<'a> {
    exact: &'a [Vec<FieldElement>],
    float: Vec<Vec<f64>>,
}

impl<'a> LpRows<'a> {
    pub fn new(exact: &'a [Vec<FieldElement>]) -> LpRows<'a> {
        LpRows { exact, float: lp::to_float_rows(exact) }
    }
}

/// Checks a certificate exactly.
pub fn verify_certificate(h: &[FieldElement], rows: &[Vec<FieldElement>], skip: Option<usize>, cert: &Certificate) -> bool {
    let d = h.len();
    match cert {
        Certificate::Present { index } => Some(*index) != skip && *index < rows.len(),
        Certificate::Trivial => true,
        Certificate::Implied { multipliers } => {
            if multipliers.iter().any(|(j, y)| y.sign() < 0 || Some(*j) == skip) {
                return false;
            }
            (0..d).all(|k| {
                let mut s = -&h[k];
                for (j, y) in multipliers {
                    s = &s + &(y * &rows[*j][k]);
                }
                s.sign() >= 0
            })
        }
        Certificate::NotImplied { witness, value } => {
            witness.iter().all(|x| x.sign() >= 0)
                && dot(h, witness) == *value
                && value.sign() > 0
                && rows.iter().enumerate().all(|(j, a)| Some(j) == skip || dot(a, witness).sign() <= 0)
        }
    }
}

/// Decides whether `{a_j · x ≤ 0, x ≥ 0}` implies `h · x ≤ 0` via
/// `min t` s.t. `Σ y_j a_j + t·1 − s = h`, `y, s ≥ 0`: a float solve picks
/// the basis, which is then re-solved and verified exactly.
pub fn implication(h: &[FieldElement], rows: &LpRows<'_>, skip: Option<usize>) -> Result<Certificate> {
    let d = h.len();
    if h.iter().all(|x| x.sign() <= 0) {
        return Ok(Certificate::Implied { multipliers: Vec::new() });
    }
    let cols: Vec<usize> = (0..rows.exact.len()).filter(|&j| Some(j) != skip).collect();
    let ny = cols.len();
    let ncols = ny + 2 + d;
    let float_matrix: Vec<Vec<f64>> = (0..d)
        .map(|k| {
            let mut r: Vec<f64> = cols.iter().map(|&j| rows.float[j][k]).collect();
            r.push(1.0);
            r.push(-1.0);
            r.extend((0..d).map(|q| if q == k { -1.0 } else { 0.0 }));
            r
        })
        .collect();
    let hf: Vec<f64> = h.iter().map(|x| x.to_f64()).collect();
    let mut cf = vec![0.0; ncols];
    cf[ny] = -1.0;
    cf[ny + 1] = 1.0;
    let sol = lp::solve_standard(&float_matrix, &hf, &cf, &1.0);
    let field = h[0].field().clone();
    let exact_col = |c: usize| -> Vec<FieldElement> {
        if c < ny {
            rows.exact[cols[c]].clone()
        } else if c == ny {
            vec![field.one(); d]
        } else if c == ny + 1 {
            vec![-field.one(); d]
        } else {
            (0..d).map(|k| if k == c - ny - 2 { -field.one() } else { field.zero() }).collect()
        }
    };
    let mut cost = vec![field.zero(); ncols];
    cost[ny] = -field.one();
    cost[ny + 1] = field.one();
    if sol.status == LpStatus::Optimal && sol.basis.len() == d {
        if let Some(cert) = certificate_from_basis(h, rows.exact, &cols, &sol.basis, &exact_col, &cost, skip) {
            return Ok(cert);
        }
    }
    // exact fallback
    let exact_matrix: Vec<Vec<FieldElement>> = {
        let columns: Vec<Vec<FieldElement>> = (0..ncols).map(exact_col).collect();
        (0..d).map(|k| columns.iter().map(|c| c[k].clone()).collect()).collect()
    };
    let sol = lp::solve_standard(&exact_matrix, h, &cost, &field.one());
    match sol.status {
        LpStatus::Unbounded => Ok(Certificate::Trivial),
        LpStatus::Infeasible => Err(Error::Lp { tag: "implication".into(), reason: "dual infeasible".into() }),
        LpStatus::Optimal => certificate_from_basis(h, rows.exact, &cols, &sol.basis, &exact_col, &cost, skip)
            .ok_or_else(|| Error::Lp { tag: "implication".into(), reason: "exact basis failed verification".into() }),
    }
}

fn certificate_from_basis(
    h: &[FieldElement],
    rows: &[Vec<FieldElement>],
    cols: &[usize],
    basis: &[usize],
    exact_col: &dyn Fn(usize) -> Vec<FieldElement>,
    cost: &[FieldElement],
    skip: Option<usize>,
) -> Option<Certificate> {
    let d = h.len();
    let ny = cols.len();
    let bcols: Vec<Vec<FieldElement>> = basis.iter().map(|&c| exact_col(c)).collect();
    let b: Vec<Vec<FieldElement>> = (0..d).map(|k| bcols.iter().map(|c| c[k].clone()).collect()).collect();
    let z = lp::solve_square(&b, h)?;
    let primal_ok = z.iter().all(|x| x.sign() >= 0);
    let t = basis.iter().zip(&z).fold(h[0].field().zero(), |acc, (&c, v)| {
        if c == ny {
            &acc + v
        } else if c == ny + 1 {
            &acc - v
        } else {
            acc
        }
    });
    if primal_ok && t.sign() <= 0 {
        let multipliers: Vec<(usize, FieldElement)> = basis
            .iter()
            .zip(&z)
            .filter(|(&c, v)| c < ny && !v.is_zero())
            .map(|(&c, v)| (cols[c], v.clone()))
            .collect();
        let cert = Certificate::Implied { multipliers };
        return verify_certificate(h, rows, skip, &cert).then_some(cert);
    }
    // witness x = −π with Bᵀπ = c_B
    let bt: Vec<Vec<FieldElement>> = bcols.clone();
    let cb: Vec<FieldElement> = basis.iter().map(|&c| cost[c].clone()).collect();
    let pi = lp::solve_square(&bt, &cb)?;
    let witness: Vec<FieldElement> = pi.iter().map(|x| -x).collect();
    let value = dot(h, &witness);
    let cert = Certificate::NotImplied { witness, value };
    verify_certificate(h, rows, skip, &cert).then_some(cert)
}

#[derive(Clone, Debug)]
pub struct LpOptimum {
    pub status: LpStatus,
    pub optimum: FieldElement,
    pub witness: Vec<FieldElement>,
}

/// Maximizes `objective · x` over the system intersected with the dominant
/// cone and the slice `Σ x = 1`, exactly.
pub fn lp_optimize(objective: &[FieldElement], system: &InequalitySystem, skip: Option<usize>) -> LpOptimum {
    let field = system.geometry.field().clone();
    let d = 2 * system.slots;
    let rows: Vec<&Vec<FieldElement>> =
        system.inequalities.iter().enumerate().filter(|(j, _)| Some(*j) != skip).map(|(_, q)| &q.ray).collect();
    let k = rows.len();
    let mut a = Vec::with_capacity(k + 1);
    for (j, r) in rows.iter().enumerate() {
        let mut row = (*r).clone();
        row.extend((0..k).map(|i| if i == j { field.one() } else { field.zero() }));
        a.push(row);
    }
    let mut norm = vec![field.one(); d];
    norm.extend((0..k).map(|_| field.zero()));
    a.push(norm);
    let mut b = vec![field.zero(); k];
    b.push(field.one());
    let mut c = objective.to_vec();
    c.extend((0..k).map(|_| field.zero()));
    let sol = lp::solve_standard(&a, &b, &c, &field.one());
    LpOptimum { status: sol.status, optimum: sol.value, witness: sol.x[..d].to_vec() }
}

/// Does `system` imply the inequality `h` over the dominant cone?
pub fn implied_by(h: &LinearInequality, system: &InequalitySystem, rows: &LpRows<'_>) -> Result<Certificate> {
    if let Some(index) = system.find(&h.ray) {
        return Ok(Certificate::Present { index });
    }
    implication(&h.ray, rows, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditStatus {
    Facet,
    Redundant,
    Implied,
    NotImplied,
}

#[derive(Clone, Debug)]
pub struct AuditEntry {
    pub tag: Tag,
    pub status: AuditStatus,
    pub certificate: Certificate,
}

impl AuditEntry {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "inequality_tag": self.tag,
            "status": self.status,
            "witness": self.certificate.to_json(),
        })
    }
}

/// Classifies each inequality as a facet (not implied by the rest) or
/// redundant.
pub fn redundancy_audit(system: &InequalitySystem) -> Result<Vec<AuditEntry>> {
    let exact = system.ray_rows();
    let rows = LpRows::new(&exact);
    system
        .inequalities
        .iter()
        .enumerate()
        .map(|(j, q)| {
            let certificate = implication(&q.ray, &rows, Some(j))
                .map_err(|e| Error::Lp { tag: q.tag.to_string(), reason: e.to_string() })?;
            let status = if certificate.implied() { AuditStatus::Redundant } else { AuditStatus::Facet };
            Ok(AuditEntry { tag: q.tag.clone(), status, certificate })
        })
        .collect()
}

/// Audits every inequality of `target` against `source`.
pub fn implication_audit(source: &InequalitySystem, target: &InequalitySystem) -> Result<Vec<AuditEntry>> {
    if source.slots != target.slots {
        return Err(Error::InvalidParameter(format!("slot counts differ: {} vs {}", source.slots, target.slots)));
    }
    let exact = source.ray_rows();
    let rows = LpRows::new(&exact);
    target
        .inequalities
        .iter()
        .map(|q| {
            let certificate =
                implied_by(q, source, &rows).map_err(|e| Error::Lp { tag: q.tag.to_string(), reason: e.to_string() })?;
            let status = if certificate.implied() { AuditStatus::Implied } else { AuditStatus::NotImplied };
            Ok(AuditEntry { tag: q.tag.clone(), status, certificate })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ConeEqualReport {
    pub a_implies_b: Vec<AuditEntry>,
    pub b_implies_a: Vec<AuditEntry>,
}

impl ConeEqualReport {
    pub fn equal(&self) -> bool {
        self.a_implies_b.iter().chain(&self.b_implies_a).all(|e| e.certificate.implied())
    }

    pub fn first_failure(&self) -> Option<&AuditEntry> {
        self.a_implies_b.iter().chain(&self.b_implies_a).find(|e| !e.certificate.implied())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "equal": self.equal(),
            "a_implies_b": self.a_implies_b.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
            "b_implies_a": self.b_implies_a.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Certifies mutual implication of two systems.
pub fn cone_equal(a: &InequalitySystem, b: &InequalitySystem) -> Result<ConeEqualReport> {
    Ok(ConeEqualReport { a_implies_b: implication_audit(a, b)?, b_implies_a: implication_audit(b, a)? })
}

/// Does some `μ' ∈ Δ` give `(λ_1…λ_m; μ') ∈ K_m` and `(μ', λ_{m+1}…; μ) ∈ K_l`?
/// Decided exactly by homogenizing with an extra coordinate `s`; returns the
/// ray coordinates of one such `μ'`.
pub fn splitting_exists(
    point: &[DominantWeight],
    km: &InequalitySystem,
    kl: &InequalitySystem,
) -> Result<Option<[FieldElement; 2]>> {
    let m = km.slots - 1;
    let l = kl.slots - 1;
    if point.len() != m + l {
        return Err(Error::InvalidParameter("point has the wrong number of slots".into()));
    }
    let field = km.geometry.field().clone();
    let vals = point_values(&field, point);
    // variables (a', b', s): rows  g_μ'·(a', b') + (Σ fixed terms)·s ≤ 0
    let mut rows = Vec::new();
    for q in km.inequalities() {
        let fixed = dot(&q.ray[..2 * m], &vals[..2 * m]);
        rows.push(vec![q.ray[2 * m].clone(), q.ray[2 * m + 1].clone(), fixed]);
    }
    for q in kl.inequalities() {
        let fixed = dot(&q.ray[2..], &vals[2 * m..]);
        rows.push(vec![q.ray[0].clone(), q.ray[1].clone(), fixed]);
    }
    let h = vec![field.zero(), field.zero(), field.one()];
    let cert = implication(&h, &LpRows::new(&rows), None)?;
    Ok(match cert {
        Certificate::NotImplied { witness, .. } => {
            let s = &witness[2];
            Some([&witness[0] / s, &witness[1] / s])
        }
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub samples: usize,
    pub members: usize,
    pub disagreements: Vec<ConePoint>,
}

/// Samples points and compares membership in `K_{m+l−1}` with the existence
/// of a splitting through `K_m` and `K_l`.
pub fn coherence_sampling(
    kind: KmAlgebra,
    n: u32,
    m: usize,
    l: usize,
    samples: usize,
    seed: u64,
) -> Result<CoherenceReport> {
    let km = gen_km(kind, n, m, DEFAULT_BUDGET)?;
    let kl = gen_km(kind, n, l, DEFAULT_BUDGET)?;
    let total = gen_km(kind, n, m + l - 1, DEFAULT_BUDGET)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CoherenceReport { samples: 0, members: 0, disagreements: Vec::new() };
    for _ in 0..samples {
        let point: ConePoint = (0..m + l)
            .map(|_| DominantWeight::ints(rng.gen_range(0..4), rng.gen_range(0..4)))
            .collect();
        report.samples += 1;
        let member = is_member(&point, &total)?.member;
        if member {
            report.members += 1;
        }
        let split = splitting_exists(&point, &km, &kl)?.is_some();
        if member != split {
            report.disagreements.push(point);
        }
    }
    Ok(report)
}

/// The tuples `(PD(x_1), …, PD(x_m), y)` of the nonzero `c^y_{x⃗}` in `A_t`;
/// they should be exactly `Σ_{A,m+1}`.
pub fn km_tuples_as_sigma(n: u32, m: usize) -> Result<(BTreeSet<Vec<WeylElement>>, BTreeSet<Vec<WeylElement>>)> {
    let algebra = UniversalAlgebra::new(&Field::cyclotomic(n)?);
    let table = SupportTable::build(&algebra, KmAlgebra::At)?;
    let group = algebra.group();
    let from_km: BTreeSet<Vec<WeylElement>> = table
        .nonzero_tuples(m, DEFAULT_BUDGET)?
        .into_iter()
        .map(|(xs, y)| {
            let mut t: Vec<WeylElement> = xs.iter().map(|&x| group.pd(&table.basis[x])).collect();
            t.push(table.basis[y]);
            t
        })
        .collect();
    let sigma: BTreeSet<Vec<WeylElement>> =
        FlagPreRing::new(n)?.enumerate_sigma(m + 1, DEFAULT_BUDGET)?.into_iter().collect();
    Ok((from_km, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wti_forms_agree_and_zero_is_member() {
        for n in 2..=5 {
            let w = gen_wti(n, 3).unwrap();
            assert!(w.forms_agree, "n={n}");
            assert_eq!(w.tuple_count, 2 * n as usize * 3);
            let zero = vec![DominantWeight::zero(); 3];
            assert!(is_member(&zero, &w.system).unwrap().member);
        }
    }

    #[test]
    fn a1_reduction() {
        let w = gen_wti(2, 3).unwrap().system;
        let oracle = a1_oracle(3).unwrap();
        assert_eq!(w.scalar_set(), oracle.scalar_set());
        let bad = vec![DominantWeight::ints(3, 0), DominantWeight::ints(1, 0), DominantWeight::ints(1, 0)];
        assert!(!is_member(&bad, &w).unwrap().member);
        assert!(cone_equal(&w, &oracle).unwrap().equal());
    }

    #[test]
    fn equilateral_is_member() {
        for n in 2..=6 {
            let w = gen_wti(n, 3).unwrap().system;
            let p = vec![DominantWeight::ints(1, 1); 3];
            assert!(is_member(&p, &w).unwrap().member, "n={n}");
        }
    }

    #[test]
    fn non_dominant_rejected() {
        let w = gen_wti(3, 3).unwrap().system;
        let p = vec![DominantWeight::ints(1, 1), DominantWeight::ints(-1, 0), DominantWeight::zero()];
        assert_eq!(is_member(&p, &w), Err(Error::NotDominant { slot: 1 }));
    }

    #[test]
    fn wti_irredundant_small() {
        let w = gen_wti(3, 3).unwrap().system;
        for e in redundancy_audit(&w).unwrap() {
            assert_eq!(e.status, AuditStatus::Facet, "{}", e.tag);
        }
    }

    #[test]
    fn wti_equals_sti_n3() {
        let w = gen_wti(3, 3).unwrap().system;
        let s = gen_sti(3, 3, DEFAULT_BUDGET).unwrap();
        assert!(w.scalar_set().is_subset(&s.scalar_set()));
        assert!(cone_equal(&w, &s).unwrap().equal());
    }

    #[test]
    fn bk_matches_wti_under_theta() {
        for n in 2..=5 {
            let bk = gen_bk(n, 2, DEFAULT_BUDGET).unwrap().pushforward_theta();
            let w = gen_wti(n, 3).unwrap().system;
            assert_eq!(bk.scalar_set(), w.scalar_set(), "n={n}");
        }
    }

    #[test]
    fn km_tuples_biject_with_sigma() {
        for n in 2..=5 {
            let (a, b) = km_tuples_as_sigma(n, 2).unwrap();
            assert_eq!(a, b, "n={n}");
        }
    }

    #[test]
    fn lp_optimize_matches_audit() {
        let w = gen_wti(3, 3).unwrap().system;
        let zero = vec![w.geometry().field().zero(); 6];
        assert!(lp_optimize(&zero, &w, None).optimum.is_zero());
        let h = w.inequalities()[0].ray.clone();
        let opt = lp_optimize(&h, &w, Some(0));
        assert_eq!(opt.status, LpStatus::Optimal);
        assert!(opt.optimum.sign() > 0);
    }
}
