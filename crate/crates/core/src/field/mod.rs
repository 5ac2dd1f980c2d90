//! Exact arithmetic in the ground field `Q(θ)`, `θ = 2cos(π/2n)`, or in `Q`
//! for a positive rational parameter `t` (hyperbolic mode).
//!
//! Elements are stored as integer coordinates in the power basis of `θ` over
//! a common positive denominator. The minimal polynomial of `θ` is monic with
//! integer coefficients, so products reduce without leaving `Z[θ]`.

pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use poly::IntPoly;

/// Bits of the isolating interval for `θ` computed at construction.
const INITIAL_BITS: u64 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldMode {
    Cyclotomic { n: u32 },
    Hyperbolic { t: BigRational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub mode: FieldMode,
    /// Ascending integer coefficients; `None` in hyperbolic mode.
    pub min_poly: Option<Vec<BigInt>>,
    pub degree: usize,
    /// Order of `t^2`; `None` stands for infinity.
    pub n_t: Option<u32>,
}

impl FieldDescriptor {
    pub fn to_json(&self) -> serde_json::Value {
        match &self.mode {
            FieldMode::Cyclotomic { n } => serde_json::json!({
                "n": n,
                "min_poly": self.min_poly.as_ref().map(|p| p.iter().map(|c| c.to_i64().unwrap_or(i64::MAX)).collect::<Vec<_>>()),
            }),
            FieldMode::Hyperbolic { t } => serde_json::json!({
                "t": rational_string(t),
                "n_t": "inf",
            }),
        }
    }
}

pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug)]
struct Isolating {
    lo: BigInt,
    hi: BigInt,
    bits: u64,
}

#[derive(Debug)]
struct Inner {
    desc: FieldDescriptor,
    /// `x^(d+j)` reduced modulo the minimal polynomial, `j = 0..d-1`.
    reduction: Vec<Vec<BigInt>>,
    theta_pows: Vec<f64>,
    iso: Option<Isolating>,
    /// `t + 1/t` as a raw element.
    tau: Raw,
    /// `q + 1/q` when `q = t^(1/2)` lies in the field.
    sigma: Option<Raw>,
}

/// Shared handle on an immutable field descriptor plus precomputed tables.
#[derive(Clone, Debug)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}
impl Eq for Field {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Raw {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Raw {
    fn zero(d: usize) -> Raw {
        Raw { num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    fn scalar(d: usize, r: &BigRational) -> Raw {
        let mut num = vec![BigInt::zero(); d];
        num[0] = r.numer().clone();
        let mut out = Raw { num, den: r.denom().clone() };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
}

impl Field {
    /// The field `Q(2cos(π/2n))`.
    pub fn cyclotomic(n: u32) -> Result<Field> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
        }
        let min_poly = min_poly_two_cos(n);
        let d = min_poly.len() - 1;
        let theta_f64 = 2.0 * (std::f64::consts::PI / (2.0 * n as f64)).cos();
        let iso = isolate_root(&min_poly, theta_f64, n)?;
        let reduction = reduction_table(&min_poly);
        let theta_pows = (0..d).map(|i| theta_f64.powi(i as i32)).collect();
        let tmp = Field(Arc::new(Inner {
            desc: FieldDescriptor {
                mode: FieldMode::Cyclotomic { n },
                min_poly: Some(min_poly),
                degree: d,
                n_t: Some(n),
            },
            reduction,
            theta_pows,
            iso: Some(iso),
            tau: Raw::zero(d),
            sigma: None,
        }));
        // t + 1/t = θ² − 2 and q + 1/q = θ
        let (tau, sigma) = {
            let theta = tmp.theta();
            ((&(&theta * &theta) - &tmp.int(2)).raw, theta.raw)
        };
        let mut inner = Arc::try_unwrap(tmp.0).expect("no other handles exist yet");
        inner.tau = tau;
        inner.sigma = Some(sigma);
        Ok(Field(Arc::new(inner)))
    }

    /// The field `Q` with a positive rational parameter `t`.
    pub fn hyperbolic(t: BigRational) -> Result<Field> {
        if !t.is_positive() {
            return Err(Error::InvalidParameter(format!("t = {t} must be positive")));
        }
        let tau = &t + t.recip();
        let sigma = rational_sqrt(&t).map(|q| &q + q.recip());
        Ok(Field(Arc::new(Inner {
            desc: FieldDescriptor { mode: FieldMode::Hyperbolic { t }, min_poly: None, degree: 1, n_t: None },
            reduction: Vec::new(),
            theta_pows: vec![1.0],
            iso: None,
            tau: Raw::scalar(1, &tau),
            sigma: sigma.map(|s| Raw::scalar(1, &s)),
        })))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn degree(&self) -> usize {
        self.0.desc.degree
    }

    /// `n` in cyclotomic mode.
    pub fn n(&self) -> Option<u32> {
        match self.0.desc.mode {
            FieldMode::Cyclotomic { n } => Some(n),
            FieldMode::Hyperbolic { .. } => None,
        }
    }

    pub fn n_t(&self) -> Option<u32> {
        self.0.desc.n_t
    }

    fn wrap(&self, raw: Raw) -> FieldElement {
        FieldElement { field: self.clone(), raw }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(Raw::zero(self.degree()))
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> FieldElement {
        let mut raw = Raw::zero(self.degree());
        raw.num[0] = BigInt::from(v);
        self.wrap(raw)
    }

    pub fn big_int(&self, v: &BigInt) -> FieldElement {
        let mut raw = Raw::zero(self.degree());
        raw.num[0] = v.clone();
        self.wrap(raw)
    }

    pub fn rational(&self, r: &BigRational) -> FieldElement {
        self.wrap(Raw::scalar(self.degree(), r))
    }

    pub fn ratio(&self, p: i64, q: i64) -> FieldElement {
        self.rational(&BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Element with the given power-basis coordinates.
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> Result<FieldElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut raw = Raw { num, den };
        raw.normalize();
        Ok(self.wrap(raw))
    }

    /// Parses a JSON array of `"p/q"` strings.
    pub fn parse_element(&self, value: &serde_json::Value) -> Result<FieldElement> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::InvalidParameter("field element must be an array".into()))?;
        let coeffs = arr
            .iter()
            .map(|v| {
                v.as_str()
                    .and_then(parse_rational)
                    .or_else(|| v.as_i64().map(|i| BigRational::from_integer(i.into())))
                    .ok_or_else(|| Error::InvalidParameter(format!("bad rational {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }

    /// The generator `θ`: `2cos(π/2n)` (cyclotomic) or `t + 1/t` (hyperbolic).
    pub fn theta(&self) -> FieldElement {
        match self.0.desc.mode {
            FieldMode::Cyclotomic { .. } => {
                let mut raw = Raw::zero(self.degree());
                raw.num[1] = BigInt::one();
                self.wrap(raw)
            }
            FieldMode::Hyperbolic { .. } => self.wrap(self.0.tau.clone()),
        }
    }

    /// `t + 1/t`, i.e. `[2]_t`.
    pub fn tau(&self) -> FieldElement {
        self.wrap(self.0.tau.clone())
    }

    /// `q + 1/q` with `q² = t`, when it is in the field.
    pub fn sigma(&self) -> Option<FieldElement> {
        self.0.sigma.clone().map(|r| self.wrap(r))
    }

    /// `2cos(jπ/2n)` for any integer `j` (cyclotomic mode only).
    pub fn two_cos(&self, j: i64) -> FieldElement {
        let n = self.n().expect("two_cos needs cyclotomic mode") as i64;
        let period = 4 * n;
        let mut j = j.rem_euclid(period);
        if j > 2 * n {
            j = period - j;
        }
        // Chebyshev recursion c_{k+1} = θ c_k − c_{k−1}
        let theta = self.theta();
        let mut prev = self.int(2);
        let mut cur = theta.clone();
        if j == 0 {
            return prev;
        }
        for _ in 1..j {
            let next = &(&theta * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `cos(kπ/n)`.
    pub fn cos_pi_n(&self, k: i64) -> FieldElement {
        &self.two_cos(2 * k) * &self.ratio(1, 2)
    }

    /// `sin(kπ/n) = cos((n − 2k)π/2n)`.
    pub fn sin_pi_n(&self, k: i64) -> FieldElement {
        let n = self.n().expect("sin_pi_n needs cyclotomic mode") as i64;
        &self.two_cos(n - 2 * k) * &self.ratio(1, 2)
    }

    /// `t^k + t^(-k)`: `2cos(kπ/n)` (cyclotomic) or rational (hyperbolic).
    pub fn t_power_sum(&self, k: u32) -> FieldElement {
        match &self.0.desc.mode {
            FieldMode::Cyclotomic { .. } => self.two_cos(2 * k as i64),
            FieldMode::Hyperbolic { t } => {
                let tk = pow_rational(t, k);
                self.rational(&(&tk + tk.recip()))
            }
        }
    }

    /// `[k]_t`, via `[k+1] = (t+1/t)[k] − [k−1]`.
    pub fn t_int(&self, k: usize) -> FieldElement {
        chebyshev_u(&self.tau(), k, self)
    }

    pub fn t_factorial(&self, k: usize) -> FieldElement {
        (1..=k).fold(self.one(), |acc, j| &acc * &self.t_int(j))
    }

    /// Table of `[m choose k]_t` for `0 <= k <= m <= max_m`.
    pub fn t_binomial_table(&self, max_m: usize) -> Vec<Vec<FieldElement>> {
        let laurent = poly::gaussian_binomial_table(max_m);
        let tau = self.tau();
        laurent
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| {
                        let in_tau = poly::palindromic_to_t(p).expect("Gaussian binomials are palindromic");
                        self.eval_int_poly(&in_tau, &tau)
                    })
                    .collect()
            })
            .collect()
    }

    /// `[m choose k]_t` written as an integer polynomial in `t + 1/t`.
    pub fn t_binomial_in_tau(m: usize, k: usize) -> IntPoly {
        let table = poly::gaussian_binomial_table(m);
        poly::palindromic_to_t(&table[m][k]).expect("Gaussian binomials are palindromic")
    }

    pub fn t_binomial(&self, m: usize, k: usize) -> FieldElement {
        if k > m {
            return self.zero();
        }
        self.eval_int_poly(&Self::t_binomial_in_tau(m, k), &self.tau())
    }

    /// `[k]_q` with `q = t^(1/2)`.
    pub fn q_int(&self, k: usize) -> Result<FieldElement> {
        let sigma = self.sigma().ok_or_else(|| {
            Error::UnsupportedMode("q = t^(1/2) is irrational for this hyperbolic parameter".into())
        })?;
        Ok(chebyshev_u(&sigma, k, self))
    }

    /// The spec-level t-number entry point, rejecting negative arguments.
    pub fn t_number(&self, kind: TNumber) -> Result<FieldElement> {
        let nonneg = |v: i64| -> Result<usize> {
            usize::try_from(v).map_err(|_| Error::InvalidParameter(format!("negative argument {v}")))
        };
        match kind {
            TNumber::Integer(k) => Ok(self.t_int(nonneg(k)?)),
            TNumber::Factorial(k) => Ok(self.t_factorial(nonneg(k)?)),
            TNumber::Binomial(m, k) => Ok(self.t_binomial(nonneg(m)?, nonneg(k)?)),
        }
    }

    pub fn eval_int_poly(&self, p: &[BigInt], x: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = &(&acc * x) + &self.big_int(c);
        }
        acc
    }

    /// A square root of a positive rational inside the field, if one exists
    /// among scaled sums and differences of the `2cos(jπ/2n)`.
    pub fn sqrt_rational(&self, r: &BigRational) -> Option<FieldElement> {
        if r.is_negative() {
            return None;
        }
        if let Some(q) = rational_sqrt(r) {
            return Some(self.rational(&q));
        }
        let n = self.n()? as i64;
        let target = self.rational(r);
        let cosines: Vec<FieldElement> = (0..=2 * n).map(|j| self.two_cos(j)).collect();
        let mut candidates: Vec<FieldElement> = cosines.clone();
        for a in 0..cosines.len() {
            for b in (a + 1)..cosines.len() {
                candidates.push(&cosines[a] + &cosines[b]);
                candidates.push(&cosines[a] - &cosines[b]);
            }
        }
        for c in candidates {
            if c.is_zero() {
                continue;
            }
            let sq = &c * &c;
            let ratio = &target / &sq;
            if let Some(rat) = ratio.as_rational() {
                if let Some(s) = rational_sqrt(&rat) {
                    let root = &c * &self.rational(&s);
                    return Some(if root.sign() < 0 { -root } else { root });
                }
            }
        }
        None
    }

    fn mul_raw(&self, a: &Raw, b: &Raw) -> Raw {
        let d = self.degree();
        if d == 1 {
            let mut out = Raw { num: vec![&a.num[0] * &b.num[0]], den: &a.den * &b.den };
            out.normalize();
            return out;
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = prod[..d].to_vec();
        for (j, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, r) in self.0.reduction[j].iter().enumerate() {
                if !r.is_zero() {
                    num[k] += c * r;
                }
            }
        }
        let mut out = Raw { num, den: &a.den * &b.den };
        out.normalize();
        out
    }

    fn add_raw(&self, a: &Raw, b: &Raw, negate_b: bool) -> Raw {
        let mut out = if a.den == b.den {
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if negate_b { x - y } else { x + y })
                .collect();
            Raw { num, den: a.den.clone() }
        } else {
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if negate_b {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            Raw { num, den: &a.den * &b.den }
        };
        out.normalize();
        out
    }

    fn inverse_raw(&self, a: &Raw) -> Raw {
        assert!(!a.is_zero(), "division by zero in field");
        let d = self.degree();
        if d == 1 {
            let mut out = Raw { num: vec![a.den.clone()], den: a.num[0].clone() };
            out.normalize();
            return out;
        }
        // Columns: coordinates of a·θ^j (the common denominator cancels).
        let base = Raw { num: a.num.clone(), den: BigInt::one() };
        let mut cols: Vec<Raw> = Vec::with_capacity(d);
        let mut theta_pow = Raw::zero(d);
        theta_pow.num[0] = BigInt::one();
        let mut theta = Raw::zero(d);
        theta.num[1] = BigInt::one();
        for _ in 0..d {
            cols.push(self.mul_raw(&base, &theta_pow));
            theta_pow = self.mul_raw(&theta_pow, &theta);
        }
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|i| (0..d).map(|j| BigRational::new(cols[j].num[i].clone(), cols[j].den.clone())).collect())
            .collect();
        let mut rhs: Vec<BigRational> = (0..d).map(|i| if i == 0 { One::one() } else { Zero::zero() }).collect();
        let x = solve_rational(&mut m, &mut rhs).expect("nonzero field elements are invertible");
        let den = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        // x solves (a.num)·x = 1, so a^{-1} = a.den · x
        let num = x.iter().map(|c| c.numer() * (&den / c.denom()) * &a.den).collect();
        let mut out = Raw { num, den };
        out.normalize();
        out
    }

    fn sign_raw(&self, a: &Raw) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.degree() == 1 {
            return if a.num[0].is_positive() { 1 } else { -1 };
        }
        // Floating evaluation with a rigorous bound on the rounding error.
        let d = self.degree();
        let mut value = 0.0f64;
        let mut magnitude = 0.0f64;
        let mut finite = true;
        for (c, p) in a.num.iter().zip(&self.0.theta_pows) {
            match c.to_f64() {
                Some(x) if x.is_finite() => {
                    value += x * p;
                    magnitude += (x * p).abs();
                }
                _ => finite = false,
            }
        }
        if finite && magnitude.is_finite() {
            let bound = magnitude * (4.0 * d as f64 + 8.0) * f64::EPSILON + f64::MIN_POSITIVE;
            if value.abs() > 2.0 * bound {
                return if value > 0.0 { 1 } else { -1 };
            }
        }
        self.sign_exact(a)
    }

    /// Interval evaluation with dyadic endpoints, refined until the interval
    /// excludes zero.
    fn sign_exact(&self, a: &Raw) -> i8 {
        let iso = self.0.iso.as_ref().expect("cyclotomic mode");
        let min_poly = self.0.desc.min_poly.as_ref().expect("cyclotomic mode");
        let (mut lo, mut hi, mut bits) = (iso.lo.clone(), iso.hi.clone(), iso.bits);
        loop {
            if let Some(s) = interval_sign(&a.num, &lo, &hi, bits) {
                return s;
            }
            let (l, h) = bisect(min_poly, &lo, &hi, bits, 64);
            lo = l;
            hi = h;
            bits += 64;
            assert!(bits < 1 << 16, "sign refinement did not terminate");
        }
    }
}

/// Argument of [`Field::t_number`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TNumber {
    Integer(i64),
    Factorial(i64),
    Binomial(i64, i64),
}

/// `U_{k-1}(x/2)`: 0, 1, x, x² − 1, …
fn chebyshev_u(x: &FieldElement, k: usize, field: &Field) -> FieldElement {
    if k == 0 {
        return field.zero();
    }
    let mut prev = field.zero();
    let mut cur = field.one();
    for _ in 1..k {
        let next = &(x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of `2cos(π/2n) = ζ + 1/ζ` for a primitive `4n`-th root
/// of unity `ζ`, read off the palindromic cyclotomic polynomial `Φ_{4n}`.
pub fn min_poly_two_cos(n: u32) -> IntPoly {
    let cyc = poly::cyclotomic(4 * n as u64);
    let half = (cyc.len() - 1) as i64 / 2;
    let laurent: poly::Laurent = cyc.iter().enumerate().map(|(i, c)| (i as i64 - half, c.clone())).collect();
    poly::palindromic_to_t(&laurent).expect("cyclotomic polynomials of even order are palindromic")
}

fn reduction_table(min_poly: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = min_poly.len() - 1;
    let mut table = Vec::with_capacity(d.saturating_sub(1));
    // x^d = −Σ p_i x^i
    let mut cur: Vec<BigInt> = min_poly[..d].iter().map(|c| -c).collect();
    for _ in 0..d.saturating_sub(1) {
        table.push(cur.clone());
        let top = cur[d - 1].clone();
        let mut next = vec![BigInt::zero(); d];
        for i in 1..d {
            next[i] = cur[i - 1].clone();
        }
        for i in 0..d {
            next[i] += &top * -&min_poly[i];
        }
        cur = next;
    }
    table
}

/// Sign of `p(m / 2^bits)`.
fn poly_sign_at(p: &[BigInt], m: &BigInt, bits: u64) -> i8 {
    let d = p.len() - 1;
    let mut acc = BigInt::zero();
    let mut m_pow = BigInt::one();
    for (i, c) in p.iter().enumerate() {
        let scale = BigInt::one() << ((d - i) as u64 * bits) as usize;
        acc += c * &m_pow * scale;
        m_pow *= m;
    }
    sign_of_int(&acc)
}

fn sign_of_int(x: &BigInt) -> i8 {
    match x.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn isolate_root(min_poly: &[BigInt], approx: f64, n: u32) -> Result<Isolating> {
    let bits = 40u64;
    let scale = (1u64 << bits) as f64;
    let lo = BigInt::from(((approx - 1e-9) * scale).floor() as i64);
    let hi = BigInt::from(((approx + 1e-9) * scale).ceil() as i64);
    let s_lo = poly_sign_at(min_poly, &lo, bits);
    let s_hi = poly_sign_at(min_poly, &hi, bits);
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return Err(Error::InvalidParameter(format!("numeric root check failed for n = {n}")));
    }
    // the other conjugates 2cos(kπ/2n), gcd(k, 4n) = 1, must lie outside
    for k in 2..(2 * n as u64) {
        if k.gcd(&(4 * n as u64)) == 1 {
            let other = 2.0 * (std::f64::consts::PI * k as f64 / (2.0 * n as f64)).cos();
            if (other - approx).abs() < 2e-9 {
                return Err(Error::InvalidParameter(format!("root of min_poly not isolated for n = {n}")));
            }
        }
    }
    let (lo, hi) = bisect(min_poly, &lo, &hi, bits, INITIAL_BITS - bits);
    Ok(Isolating { lo, hi, bits: INITIAL_BITS })
}

/// Refines `[lo, hi] / 2^bits` by `steps` bisections.
fn bisect(p: &[BigInt], lo: &BigInt, hi: &BigInt, bits: u64, steps: u64) -> (BigInt, BigInt) {
    let s_lo = poly_sign_at(p, lo, bits);
    let (mut lo, mut hi, mut bits) = (lo.clone(), hi.clone(), bits);
    for _ in 0..steps {
        lo <<= 1usize;
        hi <<= 1usize;
        bits += 1;
        let mid: BigInt = (&lo + &hi) >> 1usize;
        let s = poly_sign_at(p, &mid, bits);
        if s == 0 {
            // exact dyadic root cannot happen for an irreducible polynomial of degree > 1
            return (mid.clone(), mid);
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Sign of `Σ c_i θ^i` given `θ ∈ [lo, hi] / 2^bits` with `lo > 0`, if decided.
fn interval_sign(c: &[BigInt], lo: &BigInt, hi: &BigInt, bits: u64) -> Option<i8> {
    let d = c.len();
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    let mut lp = BigInt::one();
    let mut hp = BigInt::one();
    for (i, ci) in c.iter().enumerate() {
        let scale = BigInt::one() << ((d - 1 - i) as u64 * bits) as usize;
        if ci.is_positive() {
            lower += ci * &lp * &scale;
            upper += ci * &hp * &scale;
        } else if ci.is_negative() {
            lower += ci * &hp * &scale;
            upper += ci * &lp * &scale;
        }
        lp *= lo;
        hp *= hi;
    }
    if lower.is_positive() {
        Some(1)
    } else if upper.is_negative() {
        Some(-1)
    } else {
        None
    }
}

pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn pow_rational(r: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * r)
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Gaussian elimination over `Q`; `None` if the matrix is singular.
pub fn solve_rational(m: &mut [Vec<BigRational>], rhs: &mut [BigRational]) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..n {
            m[col][j] = &m[col][j] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..n {
                    let delta = &f * &m[col][j];
                    m[r][j] -= delta;
                }
                let delta = &f * &rhs[col];
                rhs[r] -= delta;
            }
        }
    }
    Some(rhs.to_vec())
}

/// Exact element of a [`Field`].
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    raw: Raw,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.raw.den.is_one() && self.raw.num[0].is_one() && self.raw.num[1..].iter().all(Zero::is_zero)
    }

    /// Sign of the real embedding (`θ ↦ 2cos(π/2n)`).
    pub fn sign(&self) -> i8 {
        self.field.sign_raw(&self.raw)
    }

    pub fn cmp_value(&self, other: &FieldElement) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.raw.num.iter().map(|c| BigRational::new(c.clone(), self.raw.den.clone())).collect()
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.raw.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.raw.num[0].clone(), self.raw.den.clone()))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let den = self.raw.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = 0.0;
        for (c, p) in self.raw.num.iter().zip(&self.field.0.theta_pows) {
            acc += c.to_f64().unwrap_or(f64::NAN) * p;
        }
        acc / den
    }

    pub fn inverse(&self) -> FieldElement {
        FieldElement { field: self.field.clone(), raw: self.field.inverse_raw(&self.raw) }
    }

    pub fn pow(&self, k: u32) -> FieldElement {
        let mut acc = self.field.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs().iter().map(|c| serde_json::Value::String(rational_string(c))).collect(),
        )
    }

    /// Positive integer multiple that clears all denominators.
    pub fn denominator(&self) -> &BigInt {
        &self.raw.den
    }

    pub fn scale_by_int(&self, k: &BigInt) -> FieldElement {
        let mut raw = Raw { num: self.raw.num.iter().map(|c| c * k).collect(), den: self.raw.den.clone() };
        raw.normalize();
        FieldElement { field: self.field.clone(), raw }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.raw.hash(state);
    }
}

/// Structural order on coordinates; use [`FieldElement::cmp_value`] for the
/// order of real values.
impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.raw.cmp(&other.raw)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_integer() { c.numer().to_string() } else { format!("({})", c) };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}θ"),
                _ => format!("{coeff}θ^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FieldElement {
    /// LaTeX rendering in the power basis of `θ`.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            let a = c.abs();
            let mag = if a.is_integer() {
                if a.is_one() && i > 0 { String::new() } else { a.numer().to_string() }
            } else {
                format!("\\tfrac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            let power = match i {
                0 => String::new(),
                1 => "\\theta".to_string(),
                _ => format!("\\theta^{{{i}}}"),
            };
            if out.is_empty() {
                out.push_str(sign);
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&mag);
            out.push_str(&power);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self.coeffs();
        let mut seq = serializer.serialize_seq(Some(coeffs.len()))?;
        for c in &coeffs {
            seq.serialize_element(&rational_string(c))?;
        }
        seq.end()
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        FieldElement { field: self.field.clone(), raw: self.field.add_raw(&self.raw, &rhs.raw, false) }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        FieldElement { field: self.field.clone(), raw: self.field.add_raw(&self.raw, &rhs.raw, true) }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        FieldElement { field: self.field.clone(), raw: self.field.mul_raw(&self.raw, &rhs.raw) }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        self * &rhs.inverse()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let raw = Raw { num: self.raw.num.iter().map(|c| -c).collect(), den: self.raw.den.clone() };
        FieldElement { field: self.field.clone(), raw }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(mut iter: I) -> FieldElement {
        let first = iter.next().expect("sum of an empty iterator needs a field");
        iter.fold(first, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: u32) -> Field {
        Field::cyclotomic(n).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_min_polys() {
        assert_eq!(cyc(2).descriptor().min_poly, Some(ints(&[-2, 0, 1])));
        assert_eq!(cyc(3).descriptor().min_poly, Some(ints(&[-3, 0, 1])));
        // θ = 2cos(π/8): θ⁴ − 4θ² + 2
        assert_eq!(cyc(4).descriptor().min_poly, Some(ints(&[2, 0, -4, 0, 1])));
    }

    #[test]
    fn degree_is_half_totient() {
        for n in 2..=16u32 {
            let f = cyc(n);
            assert_eq!(f.degree() as u64, poly::euler_phi(4 * n as u64) / 2, "n={n}");
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(Field::cyclotomic(1), Err(Error::InvalidParameter(_))));
        assert!(Field::hyperbolic(BigRational::from_integer((-1).into())).is_err());
        assert!(Field::hyperbolic(BigRational::from_integer(0.into())).is_err());
    }

    #[test]
    fn hyperbolic_theta() {
        let f = Field::hyperbolic(BigRational::from_integer(2.into())).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.n_t(), None);
        assert_eq!(f.theta(), f.ratio(5, 2));
        let one = Field::hyperbolic(BigRational::one()).unwrap();
        assert_eq!(one.t_int(5), one.int(5));
        assert_eq!(one.q_int(4).unwrap(), one.int(4));
        assert!(f.q_int(2).is_err());
    }

    #[test]
    fn signs() {
        let f3 = cyc(3);
        assert_eq!(f3.zero().sign(), 0);
        assert_eq!((f3.theta() - f3.one()).sign(), 1);
        let f5 = cyc(5);
        let t = f5.theta();
        assert_eq!((&t * &t - f5.int(4)).sign(), -1);
    }

    #[test]
    fn exact_sign_path_agrees_with_float() {
        let f = cyc(7);
        let t = f.theta();
        // tiny but nonzero: (θ − approx) scaled
        let approx = BigRational::new(BigInt::from(1_949_855_824_363i64), BigInt::from(1_000_000_000_000i64));
        let e = &t - &f.rational(&approx);
        let s = e.sign();
        assert_eq!(s as f64, (2.0 * (std::f64::consts::PI / 14.0).cos() - 1.949855824363).signum());
        assert_eq!(f.sign_exact(&e.raw), s);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = cyc(6);
        let t = f.theta();
        let e = &(&t * &t) - &f.ratio(3, 7) + &t;
        assert!((&e * &e.inverse()).is_one());
    }

    #[test]
    fn known_t_and_q_numbers() {
        let f = cyc(3);
        assert_eq!(f.t_int(0), f.zero());
        assert_eq!(f.t_int(1), f.one());
        assert_eq!(f.t_int(2), f.one());
        assert_eq!(f.q_int(2).unwrap(), f.theta());
        assert_eq!(f.q_int(3).unwrap(), f.int(2));
        assert!(matches!(f.t_number(TNumber::Integer(-1)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn binomials_at_the_root_of_unity() {
        for n in 2..=9u32 {
            let f = cyc(n);
            let n = n as usize;
            let table = f.t_binomial_table(n + 1);
            for k in 0..n {
                assert!(table[n - 1][k].is_one(), "n={n} k={k}");
            }
            for k in 1..n {
                assert!(table[n][k].is_zero(), "n={n} k={k}");
            }
            // vanishing stops at m = n: [n+1]_t = −1
            assert_eq!(table[n + 1][1], f.int(-1));
        }
    }

    #[test]
    fn sqrt_two_and_three() {
        let f = cyc(4);
        let r2 = f.sqrt_rational(&BigRational::from_integer(2.into())).unwrap();
        assert_eq!(&r2 * &r2, f.int(2));
        assert_eq!(r2.sign(), 1);
        let f6 = cyc(6);
        let r3 = f6.sqrt_rational(&BigRational::from_integer(3.into())).unwrap();
        assert_eq!(&r3 * &r3, f6.int(3));
        assert!(cyc(3).sqrt_rational(&BigRational::from_integer(2.into())).is_none());
    }

    #[test]
    fn trig_values() {
        let f = cyc(5);
        for k in 0..10 {
            let c = f.cos_pi_n(k).to_f64();
            let s = f.sin_pi_n(k).to_f64();
            let a = std::f64::consts::PI * k as f64 / 5.0;
            assert!((c - a.cos()).abs() < 1e-12 && (s - a.sin()).abs() < 1e-12, "k={k}");
        }
    }
}
