//! Integer polynomial helpers: cyclotomic polynomials, palindromic Laurent
//! polynomials rewritten in the variable `t + 1/t`, and Gaussian binomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense polynomial, coefficient of `x^i` at index `i`.
pub type IntPoly = Vec<BigInt>;

/// Sparse Laurent polynomial in one variable.
pub type Laurent = BTreeMap<i64, BigInt>;

pub fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
pub fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    let dn = den.len() - 1;
    assert!(den[dn].is_one(), "divisor must be monic");
    let mut rem: IntPoly = num.to_vec();
    trim(&mut rem);
    if rem.len() <= dn {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(&mut quot);
    quot
}

/// The N-th cyclotomic polynomial, built from `x^N - 1` by dividing out the
/// cyclotomic factors of all proper divisors.
pub fn cyclotomic(big_n: u64) -> IntPoly {
    let mut cache: BTreeMap<u64, IntPoly> = BTreeMap::new();
    cyclotomic_cached(big_n, &mut cache)
}

fn cyclotomic_cached(big_n: u64, cache: &mut BTreeMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = cache.get(&big_n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); big_n as usize + 1];
    p[0] = -BigInt::one();
    p[big_n as usize] = BigInt::one();
    for d in 1..big_n {
        if big_n % d == 0 {
            let f = cyclotomic_cached(d, cache);
            p = div_exact_monic(&p, &f);
        }
    }
    cache.insert(big_n, p.clone());
    p
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Rewrites a palindromic Laurent polynomial `p(x) = p(1/x)` as a polynomial
/// in `T = x + 1/x`. Returns `None` if `p` is not palindromic.
pub fn palindromic_to_t(p: &Laurent) -> Option<IntPoly> {
    let mut rest: Laurent = p.iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (*e, c.clone())).collect();
    for (e, c) in &rest {
        if rest.get(&-e) != Some(c) {
            return None;
        }
    }
    let top = rest.keys().next_back().copied().unwrap_or(0).max(0);
    let mut out = vec![BigInt::zero(); top as usize + 1];
    let mut e = top;
    while e > 0 {
        let c = rest.get(&e).cloned().unwrap_or_default();
        if !c.is_zero() {
            // subtract c (x + 1/x)^e
            let mut binom = BigInt::one();
            for i in 0..=e {
                let exp = e - 2 * i;
                let entry = rest.entry(exp).or_default();
                *entry -= &c * &binom;
                binom = binom * BigInt::from(e - i) / BigInt::from(i + 1);
            }
            out[e as usize] = c;
        }
        e -= 1;
    }
    out[0] = rest.get(&0).cloned().unwrap_or_default();
    if rest.iter().any(|(k, c)| *k != 0 && !c.is_zero()) {
        return None;
    }
    trim(&mut out);
    Some(out)
}

fn shift(p: &Laurent, by: i64) -> Laurent {
    p.iter().map(|(e, c)| (e + by, c.clone())).collect()
}

fn add_into(acc: &mut Laurent, p: &Laurent) {
    for (e, c) in p {
        *acc.entry(*e).or_default() += c;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// Balanced Gaussian binomials `[m choose k]_t` as Laurent polynomials in `t`
/// for all `0 <= k <= m <= max_m`, built only from the Pascal recursion
/// `[m,k] = t^k [m-1,k] + t^(k-m) [m-1,k-1]`.
pub fn gaussian_binomial_table(max_m: usize) -> Vec<Vec<Laurent>> {
    let one: Laurent = [(0i64, BigInt::one())].into_iter().collect();
    let mut rows: Vec<Vec<Laurent>> = vec![vec![one.clone()]];
    for m in 1..=max_m {
        let prev = &rows[m - 1];
        let mut row = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut acc = Laurent::new();
            if k < m {
                add_into(&mut acc, &shift(&prev[k], k as i64));
            }
            if k > 0 {
                add_into(&mut acc, &shift(&prev[k - 1], k as i64 - m as i64));
            }
            row.push(acc);
        }
        rows.push(row);
    }
    rows
}

/// Horner evaluation of an integer polynomial at a point of any ring that
/// supports the needed operations.
pub fn eval_with<T, F>(p: &[BigInt], x: &T, zero: T, from_int: F) -> T
where
    T: Clone + std::ops::Mul<T, Output = T> + std::ops::Add<T, Output = T>,
    F: Fn(&BigInt) -> T,
{
    let mut acc = zero;
    for c in p.iter().rev() {
        acc = acc * x.clone() + from_int(c);
    }
    acc
}

pub fn max_abs(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(12).len() - 1, euler_phi(12) as usize);
    }

    #[test]
    fn palindromic_rewrite() {
        // x^2 + 1 + x^-2 = T^2 - 1
        let p: Laurent = [(2, 1), (0, 1), (-2, 1)].into_iter().map(|(e, c)| (e, BigInt::from(c))).collect();
        assert_eq!(palindromic_to_t(&p), Some(ints(&[-1, 0, 1])));
        let q: Laurent = [(1, BigInt::from(1))].into_iter().collect();
        assert_eq!(palindromic_to_t(&q), None);
    }

    #[test]
    fn gaussian_binomials_at_one_are_binomials() {
        let table = gaussian_binomial_table(10);
        for (m, row) in table.iter().enumerate() {
            let mut b = BigInt::one();
            for (k, p) in row.iter().enumerate() {
                let s: BigInt = p.values().sum();
                assert_eq!(s, b, "m={m} k={k}");
                b = b * BigInt::from(m - k) / BigInt::from(k + 1);
            }
        }
    }
}
