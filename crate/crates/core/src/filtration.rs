//! Concave weightings `φ = −Φ`, `φ_i = −Φ_i`, the associated graded algebras,
//! the deformation `A_{t,τ}` and its limits at `τ → 0` and `τ → ∞`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::json;

use crate::algebra::{AlgebraElement, UniversalAlgebra};
use crate::dihedral::{Side, WeylElement};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::prering::{FlagPreRing, FlagVector, GrassVector, GrassmannianPreRing, Hat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightTarget {
    /// `φ = −Φ` on `A_t`.
    Full,
    /// `φ_i = −Φ_i` on `B^(i)`.
    Side(Side),
}

/// A weighting together with the algebra it filters.
#[derive(Clone, Debug)]
pub struct ConcaveWeighting {
    target: WeightTarget,
    algebra: UniversalAlgebra,
    values: BTreeMap<WeylElement, FieldElement>,
}

impl ConcaveWeighting {
    pub fn new(algebra: &UniversalAlgebra, target: WeightTarget) -> ConcaveWeighting {
        let field = algebra.field();
        let group = algebra.group();
        let basis = match target {
            WeightTarget::Full => algebra.basis(),
            WeightTarget::Side(i) => algebra.grassmannian_basis(i),
        };
        let values = basis
            .into_iter()
            .map(|w| {
                let big_phi = match target {
                    WeightTarget::Full => group.phi(field, &w),
                    WeightTarget::Side(i) => group.phi_side(field, &w, i),
                };
                (w, -big_phi)
            })
            .collect();
        ConcaveWeighting { target, algebra: algebra.clone(), values }
    }

    pub fn full(algebra: &UniversalAlgebra) -> ConcaveWeighting {
        Self::new(algebra, WeightTarget::Full)
    }

    pub fn side(algebra: &UniversalAlgebra, i: Side) -> ConcaveWeighting {
        Self::new(algebra, WeightTarget::Side(i))
    }

    pub fn target(&self) -> WeightTarget {
        self.target
    }

    pub fn algebra(&self) -> &UniversalAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn basis(&self) -> Vec<WeylElement> {
        self.values.keys().copied().collect()
    }

    pub fn value(&self, w: &WeylElement) -> Result<&FieldElement> {
        self.values
            .get(w)
            .ok_or_else(|| Error::Domain(format!("{w} is not in the weighted basis")))
    }

    /// `φ(u) + φ(v) − φ(w)`.
    pub fn defect(&self, u: &WeylElement, v: &WeylElement, w: &WeylElement) -> Result<FieldElement> {
        Ok(&(self.value(u)? + self.value(v)?) - self.value(w)?)
    }

    /// Top degree at which equality occurs beyond unit factors.
    fn equality_degree(&self) -> Option<u32> {
        let n = self.algebra.group().n()?;
        Some(match self.target {
            WeightTarget::Full => n,
            WeightTarget::Side(_) => n - 1,
        })
    }

    /// The predicted equality cases: a unit factor, or complementary degrees.
    pub fn predicted_equality(&self, u: &WeylElement, v: &WeylElement, w: &WeylElement) -> bool {
        u.is_identity()
            || v.is_identity()
            || self.equality_degree().is_some_and(|d| u.len + v.len == d && w.len == d)
    }

    /// Product terms within the cap, as `(w, c^w_{uv})`.
    fn product_terms(&self, u: &WeylElement, v: &WeylElement) -> Result<Vec<(WeylElement, FieldElement)>> {
        if !self.algebra.is_finite() && u.len + v.len > self.algebra.top_degree() {
            return Ok(Vec::new());
        }
        Ok(self.algebra.mul_basis(u, v)?.terms().map(|(w, c)| (*w, c.clone())).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcavityReport {
    pub passed: bool,
    pub checked: usize,
    pub equality_set: Vec<(WeylElement, WeylElement, WeylElement)>,
    pub matches_theorem: bool,
    pub first_violation: Option<(WeylElement, WeylElement, WeylElement)>,
}

/// Checks `φ(u) + φ(v) ≥ φ(w)` over every nonzero structure constant and
/// compares the equality set with the predicted one.
pub fn concavity_audit(weighting: &ConcaveWeighting) -> Result<ConcavityReport> {
    let basis = weighting.basis();
    let mut report = ConcavityReport {
        passed: true,
        checked: 0,
        equality_set: Vec::new(),
        matches_theorem: true,
        first_violation: None,
    };
    for u in &basis {
        for v in &basis {
            for (w, _) in weighting.product_terms(u, v)? {
                report.checked += 1;
                let d = weighting.defect(u, v, &w)?;
                let sign = d.sign();
                if sign < 0 {
                    report.passed = false;
                    report.first_violation.get_or_insert((*u, *v, w));
                }
                let equal = sign == 0;
                if equal {
                    report.equality_set.push((*u, *v, w));
                }
                if equal != weighting.predicted_equality(u, v, &w) {
                    report.matches_theorem = false;
                }
            }
        }
    }
    Ok(report)
}

/// Product in the associated graded algebra: equality-level terms only.
pub fn gr_mul(u: &WeylElement, v: &WeylElement, weighting: &ConcaveWeighting) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (w, c) in weighting.product_terms(u, v)? {
        if weighting.defect(u, v, &w)?.is_zero() {
            out.add_term(w, c);
        }
    }
    Ok(out)
}

/// Bilinear extension of `gr_mul`.
pub fn gr_mul_elements(a: &AlgebraElement, b: &AlgebraElement, weighting: &ConcaveWeighting) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (u, x) in a.terms() {
        for (v, y) in b.terms() {
            let xy = x * y;
            for (w, c) in gr_mul(u, v, weighting)?.terms() {
                out.add_term(*w, &xy * c);
            }
        }
    }
    Ok(out)
}

/// Left-to-right product in the associated graded algebra.
pub fn gr_product_chain(ws: &[WeylElement], weighting: &ConcaveWeighting) -> Result<AlgebraElement> {
    let (first, rest) = ws
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("product of an empty list".into()))?;
    let one = weighting.field().one();
    let mut acc = AlgebraElement::basis(*first, one.clone());
    for w in rest {
        acc = gr_mul_elements(&acc, &AlgebraElement::basis(*w, one.clone()), weighting)?;
    }
    Ok(acc)
}

/// One term `τ^e c σ_w` of a deformed product, with `e` kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedTerm {
    pub w: WeylElement,
    pub coeff: FieldElement,
    pub exponent: FieldElement,
}

/// `σ_u ⊙_τ σ_v = Σ τ^{φ(u)+φ(v)−φ(w)} c^w_{uv} σ_w`.
pub fn deform_mul(u: &WeylElement, v: &WeylElement, weighting: &ConcaveWeighting) -> Result<Vec<DeformedTerm>> {
    weighting
        .product_terms(u, v)?
        .into_iter()
        .map(|(w, coeff)| Ok(DeformedTerm { exponent: weighting.defect(u, v, &w)?, w, coeff }))
        .collect()
}

/// `τ^e` for positive rational `τ` when the result is rational.
pub fn rational_power(tau: &BigRational, e: &FieldElement) -> Result<BigRational> {
    if !tau.is_positive() {
        return Err(Error::InvalidParameter("τ must be positive".into()));
    }
    if tau.is_one() || e.is_zero() {
        return Ok(BigRational::one());
    }
    let unsupported = || Error::UnsupportedExponent(e.to_string());
    let r = e.as_rational().ok_or_else(unsupported)?;
    let q = r.denom().to_u32().ok_or_else(unsupported)?;
    let root = |x: &BigInt| -> Option<BigInt> {
        let y = x.nth_root(q);
        (y.pow(q) == *x).then_some(y)
    };
    let base = BigRational::new(
        root(tau.numer()).ok_or_else(unsupported)?,
        root(tau.denom()).ok_or_else(unsupported)?,
    );
    let p = r.numer().abs().to_u32().ok_or_else(unsupported)?;
    let mut out = num_traits::pow(base, p as usize);
    if r.is_negative() {
        out = out.recip();
    }
    Ok(out)
}

/// Evaluates a deformed product at a rational `τ`.
pub fn evaluate_deformed(terms: &[DeformedTerm], tau: &BigRational, field: &Field) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for t in terms {
        let scale = field.rational(&rational_power(tau, &t.exponent)?);
        out.add_term(t.w, &scale * &t.coeff);
    }
    Ok(out)
}

/// `τ → ∞` limit of a product: `∞` on non-degenerate terms, `1` on
/// degenerate ones.
pub fn limit_mul(u: &WeylElement, v: &WeylElement, weighting: &ConcaveWeighting) -> Result<BTreeMap<WeylElement, Hat>> {
    let mut out = BTreeMap::new();
    for t in deform_mul(u, v, weighting)? {
        let hat = match t.exponent.sign() {
            1 => Hat::Infinity,
            0 if t.coeff.is_one() => Hat::One,
            0 => {
                return Err(Error::Precondition(format!(
                    "degenerate term {} in {u}·{v} has coefficient {} outside Z/2",
                    t.w, t.coeff
                )))
            }
            _ => return Err(Error::Precondition(format!("negative exponent in {u}·{v}"))),
        };
        out.insert(t.w, hat);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitMismatch {
    pub u: WeylElement,
    pub v: WeylElement,
    pub limit: String,
    pub prering: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<LimitMismatch>,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn render<K: Ord + Copy + std::fmt::Display>(terms: impl Iterator<Item = (K, Hat)>) -> String {
    let parts: Vec<String> = terms.map(|(k, c)| format!("{c}·{k}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Image of `σ_w` in `H_*(X_l)`, `l = 3 − i`: `C_{n−1−ℓ_l(w)}`.
pub fn grassmannian_image(algebra: &UniversalAlgebra, i: Side, w: &WeylElement) -> Result<u32> {
    let n = algebra.group().n().ok_or_else(|| Error::UnsupportedMode("finite n required".into()))?;
    Ok(n - 1 - algebra.group().relative_length(w, i.other()))
}

/// Compares the `τ → ∞` limit table with the pre-ring table under the
/// corresponding isomorphism.
pub fn limit_agreement(weighting: &ConcaveWeighting) -> Result<LimitReport> {
    let algebra = weighting.algebra();
    let n = algebra.group().n().ok_or_else(|| Error::UnsupportedMode("finite n required".into()))?;
    let basis = weighting.basis();
    let mut report = LimitReport { pairs_checked: 0, mismatches: Vec::new() };
    match weighting.target() {
        WeightTarget::Full => {
            let flag = FlagPreRing::new(n)?;
            for u in &basis {
                for v in &basis {
                    report.pairs_checked += 1;
                    let mut image = FlagVector::zero();
                    for (w, c) in limit_mul(u, v, weighting)? {
                        image.add_term(flag.pd(&w), c)?;
                    }
                    let expected = flag.mul(&flag.pd(u), &flag.pd(v))?;
                    if image != expected {
                        report.mismatches.push(LimitMismatch {
                            u: *u,
                            v: *v,
                            limit: render(image.terms().map(|(k, c)| (*k, *c))),
                            prering: render(expected.terms().map(|(k, c)| (*k, *c))),
                        });
                    }
                }
            }
        }
        WeightTarget::Side(i) => {
            let grass = GrassmannianPreRing::new(n)?;
            for u in &basis {
                for v in &basis {
                    report.pairs_checked += 1;
                    let mut image = GrassVector::zero();
                    for (w, c) in limit_mul(u, v, weighting)? {
                        image.add_term(grassmannian_image(algebra, i, &w)?, c)?;
                    }
                    let expected =
                        grass.mul(grassmannian_image(algebra, i, u)?, grassmannian_image(algebra, i, v)?)?;
                    if image != expected {
                        report.mismatches.push(LimitMismatch {
                            u: *u,
                            v: *v,
                            limit: render(image.terms().map(|(k, c)| (*k, *c))),
                            prering: render(expected.terms().map(|(k, c)| (*k, *c))),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Multiplication table of `gr` or of the `τ → ∞` limit as JSON.
pub fn table_json(weighting: &ConcaveWeighting, limit: bool) -> Result<serde_json::Value> {
    let basis = weighting.basis();
    let mut entries = Vec::new();
    for u in &basis {
        for v in &basis {
            let terms = if limit {
                serde_json::Value::Array(
                    limit_mul(u, v, weighting)?
                        .into_iter()
                        .map(|(w, c)| json!({"w": w, "coeff": c}))
                        .collect(),
                )
            } else {
                gr_mul(u, v, weighting)?.to_json()
            };
            entries.push(json!({"u": u, "v": v, "terms": terms}));
        }
    }
    Ok(json!({
        "field": weighting.field().descriptor().to_json(),
        "basis": basis,
        "table": entries,
    }))
}

/// `F(x) = [x+1 choose 2]_q = [x+1]_q [x]_q / [2]_q`.
pub fn big_f(field: &Field, x: usize) -> Result<FieldElement> {
    Ok(&(&field.q_int(x + 1)? * &field.q_int(x)?) / &field.q_int(2)?)
}

/// `G(x) = ([x]_q)²`.
pub fn big_g(field: &Field, x: usize) -> Result<FieldElement> {
    Ok(field.q_int(x)?.pow(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperadditivityReport {
    pub checked: usize,
    pub failures: Vec<(char, usize, usize)>,
}

impl SuperadditivityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `F(x)+F(y) ≤ F(x+y)` for `x+y ≤ n−1` with equality iff `xy(n−1−x−y) = 0`,
/// and `G(x)+G(y) ≤ G(x+y)` for `x+y ≤ n` with equality iff `xy(n−x−y) = 0`.
/// Without a finite `n`, integers up to `bound` are used and equality is
/// expected iff `xy = 0`.
pub fn superadditivity_audit(field: &Field, bound: usize) -> Result<SuperadditivityReport> {
    let n = field.n().map(|n| n as usize);
    let mut report = SuperadditivityReport { checked: 0, failures: Vec::new() };
    let checks: [(char, usize, fn(&Field, usize) -> Result<FieldElement>); 2] = [('F', 1, big_f), ('G', 0, big_g)];
    for (name, shift, func) in checks {
        let top = n.map_or(bound, |n| n - shift);
        let values: Vec<FieldElement> = (0..=top).map(|x| func(field, x)).collect::<Result<_>>()?;
        for x in 0..=top {
            for y in 0..=top - x {
                report.checked += 1;
                let d = &values[x + y] - &(&values[x] + &values[y]);
                let predicted_equal = x * y == 0 || n.is_some_and(|_| x + y == top);
                let ok = d.sign() > 0 || (d.is_zero() && predicted_equal);
                if !ok || (predicted_equal && !d.is_zero()) {
                    report.failures.push((name, x, y));
                }
            }
        }
    }
    Ok(report)
}

/// Compares `Φ_i` and `Φ` with their closed forms `F(ℓ(w))` on `W^(i)` and
/// `G(ℓ(w))` on `W`; returns the elements where they differ.
pub fn closed_form_mismatches(algebra: &UniversalAlgebra) -> Result<Vec<(WeylElement, WeightTarget)>> {
    let field = algebra.field();
    let group = algebra.group();
    let mut out = Vec::new();
    for w in algebra.basis() {
        if group.phi(field, &w) != big_g(field, w.len as usize)? {
            out.push((w, WeightTarget::Full));
        }
        for i in Side::BOTH {
            if group.in_grassmannian(&w, i) && group.phi_side(field, &w, i) != big_f(field, w.len as usize)? {
                out.push((w, WeightTarget::Side(i)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(n: u32) -> ConcaveWeighting {
        ConcaveWeighting::full(&UniversalAlgebra::new(&Field::cyclotomic(n).unwrap()))
    }

    #[test]
    fn equality_cases_n3() {
        let wt = full(3);
        let s1 = WeylElement::generator(Side::One);
        let s1s2 = WeylElement::ending(2, Side::Two);
        let w0 = WeylElement { len: 3, side: None };
        assert!(wt.defect(&s1, &s1s2, &w0).unwrap().is_zero());
        let s2s1 = WeylElement::ending(2, Side::One);
        assert!(wt.defect(&s1, &s1, &s2s1).unwrap().sign() > 0);
    }

    #[test]
    fn gr_drops_degree_two_at_n4() {
        let wt = full(4);
        let s1 = WeylElement::generator(Side::One);
        let s2 = WeylElement::generator(Side::Two);
        assert!(gr_mul(&s1, &s2, &wt).unwrap().is_zero());
        assert!(gr_mul(&s1, &s1, &wt).unwrap().is_zero());
    }

    #[test]
    fn audits_pass_small_n() {
        for n in 2..=6 {
            let a = UniversalAlgebra::new(&Field::cyclotomic(n).unwrap());
            for wt in [ConcaveWeighting::full(&a), ConcaveWeighting::side(&a, Side::One)] {
                let r = concavity_audit(&wt).unwrap();
                assert!(r.passed && r.matches_theorem, "n={n} {:?}", wt.target());
                assert!(limit_agreement(&wt).unwrap().passed(), "n={n}");
            }
        }
    }

    #[test]
    fn rational_powers() {
        let e = Field::cyclotomic(3).unwrap().ratio(3, 2);
        let tau = BigRational::new(4.into(), 9.into());
        assert_eq!(rational_power(&tau, &e).unwrap(), BigRational::new(8.into(), 27.into()));
        let two = BigRational::from_integer(2.into());
        assert!(matches!(rational_power(&two, &e), Err(Error::UnsupportedExponent(_))));
    }

    #[test]
    fn closed_forms_and_superadditivity() {
        for n in 2..=8 {
            let f = Field::cyclotomic(n).unwrap();
            let a = UniversalAlgebra::new(&f);
            assert_eq!(closed_form_mismatches(&a).unwrap(), vec![], "n={n}");
            assert!(superadditivity_audit(&f, 0).unwrap().passed(), "n={n}");
        }
    }
}
