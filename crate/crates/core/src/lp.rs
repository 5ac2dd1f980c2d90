//! Dense two-phase simplex with Bland's rule, generic over the scalar type,
//! plus small exact linear solves.

use std::fmt::Debug;

use crate::field::FieldElement;

/// Ordered-field operations needed by the simplex.
pub trait Scalar: Clone + Debug {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Sign, with whatever tolerance the type needs.
    fn sign(&self) -> i8;
    fn is_zero(&self) -> bool {
        self.sign() == 0
    }
}

/// Absolute tolerance for floating signs.
pub const FLOAT_EPS: f64 = 1e-9;

impl Scalar for f64 {
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn add(&self, o: &f64) -> f64 {
        self + o
    }
    fn sub(&self, o: &f64) -> f64 {
        self - o
    }
    fn mul(&self, o: &f64) -> f64 {
        self * o
    }
    fn div(&self, o: &f64) -> f64 {
        self / o
    }
    fn neg(&self) -> f64 {
        -self
    }
    fn sign(&self) -> i8 {
        if *self > FLOAT_EPS {
            1
        } else if *self < -FLOAT_EPS {
            -1
        } else {
            0
        }
    }
}

impl Scalar for FieldElement {
    fn zero(&self) -> FieldElement {
        self.field().zero()
    }
    fn one(&self) -> FieldElement {
        self.field().one()
    }
    fn add(&self, o: &FieldElement) -> FieldElement {
        self + o
    }
    fn sub(&self, o: &FieldElement) -> FieldElement {
        self - o
    }
    fn mul(&self, o: &FieldElement) -> FieldElement {
        self * o
    }
    fn div(&self, o: &FieldElement) -> FieldElement {
        self / o
    }
    fn neg(&self) -> FieldElement {
        -self
    }
    fn sign(&self) -> i8 {
        FieldElement::sign(self)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// Basic column of each surviving row.
    pub basis: Vec<usize>,
    pub x: Vec<T>,
    pub value: T,
    pub pivots: usize,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    obj: Vec<T>,
    obj_val: T,
    basis: Vec<usize>,
    pivots: usize,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.div(&p);
            }
        }
        self.rhs[r] = self.rhs[r].div(&p);
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for &j in &nz {
                self.rows[i][j] = self.rows[i][j].sub(&f.mul(&pivot_row[j]));
            }
            self.rhs[i] = self.rhs[i].sub(&f.mul(&pivot_rhs));
        }
        let f = self.obj[c].clone();
        if !f.is_zero() {
            for &j in &nz {
                self.obj[j] = self.obj[j].sub(&f.mul(&pivot_row[j]));
            }
            self.obj_val = self.obj_val.sub(&f.mul(&pivot_rhs));
        }
        self.basis[r] = c;
    }

    /// Maximizes; `obj[j] < 0` means column `j` improves. Returns false if unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].sign() < 0) else {
                return true;
            };
            let mut best: Option<usize> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].sign() <= 0 {
                    continue;
                }
                best = Some(match best {
                    None => i,
                    Some(b) => {
                        // rhs_i / a_ic versus rhs_b / a_bc, both denominators positive
                        let d = self.rhs[i].mul(&self.rows[b][c]).sub(&self.rhs[b].mul(&self.rows[i][c])).sign();
                        if d < 0 || (d == 0 && self.basis[i] < self.basis[b]) {
                            i
                        } else {
                            b
                        }
                    }
                });
            }
            match best {
                Some(r) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x ≥ 0`.
pub fn solve_standard<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T], unit: &T) -> LpSolution<T> {
    let m = a.len();
    let n = c.len();
    let zero = unit.zero();
    let one = unit.one();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].sign() < 0;
        let mut row: Vec<T> = a[i].iter().map(|x| if flip { x.neg() } else { x.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { one.clone() } else { zero.clone() }));
        rows.push(row);
        rhs.push(if flip { b[i].neg() } else { b[i].clone() });
    }
    let mut obj = vec![zero.clone(); n + m];
    let mut obj_val = zero.clone();
    for i in 0..m {
        for j in 0..n {
            obj[j] = obj[j].sub(&rows[i][j]);
        }
        obj_val = obj_val.sub(&rhs[i]);
    }
    let mut t = Tableau { rows, rhs, obj, obj_val, basis: (n..n + m).collect(), pivots: 0 };
    t.run(n + m);
    let infeasible = |t: &Tableau<T>| LpSolution {
        status: LpStatus::Infeasible,
        basis: t.basis.clone(),
        x: vec![zero.clone(); n],
        value: zero.clone(),
        pivots: t.pivots,
    };
    if t.obj_val.sign() < 0 {
        return infeasible(&t);
    }
    // drive artificial columns out of the basis
    let mut keep = vec![true; m];
    for i in 0..m {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => keep[i] = false,
            }
        }
    }
    let mut k = 0;
    t.rows.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    let mut k = 0;
    t.rhs.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    let mut k = 0;
    t.basis.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    // phase two objective row: c_B B^{-1} A_j − c_j
    let mut obj: Vec<T> = (0..n + m).map(|j| if j < n { c[j].neg() } else { zero.clone() }).collect();
    let mut obj_val = zero.clone();
    for (i, &bj) in t.basis.iter().enumerate() {
        let cb = &c[bj];
        if cb.is_zero() {
            continue;
        }
        for j in 0..n {
            if !t.rows[i][j].is_zero() {
                obj[j] = obj[j].add(&cb.mul(&t.rows[i][j]));
            }
        }
        obj_val = obj_val.add(&cb.mul(&t.rhs[i]));
    }
    t.obj = obj;
    t.obj_val = obj_val;
    let bounded = t.run(n);
    let mut x = vec![zero.clone(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        x[bj] = t.rhs[i].clone();
    }
    LpSolution {
        status: if bounded { LpStatus::Optimal } else { LpStatus::Unbounded },
        basis: t.basis,
        x,
        value: t.obj_val,
        pivots: t.pivots,
    }
}

/// Solves the square system `M z = r` by Gaussian elimination.
pub fn solve_square<T: Scalar>(m: &[Vec<T>], r: &[T]) -> Option<Vec<T>> {
    let n = r.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut b: Vec<T> = r.to_vec();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let pv = a[col][col].clone();
        for j in col..n {
            a[col][j] = a[col][j].div(&pv);
        }
        b[col] = b[col].div(&pv);
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                a[i][j] = a[i][j].sub(&f.mul(&a[col][j]));
            }
            b[i] = b[i].sub(&f.mul(&b[col]));
        }
    }
    Some(b)
}

/// Converts an exact matrix to floats.
pub fn to_float_rows(rows: &[Vec<FieldElement>]) -> Vec<Vec<f64>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn small_float_lp() {
        // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![vec![1.0, 2.0, 1.0, 0.0], vec![3.0, 1.0, 0.0, 1.0]];
        let sol = solve_standard(&a, &[4.0, 6.0], &[1.0, 1.0, 0.0, 0.0], &1.0);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.value - 2.8).abs() < 1e-12);
    }

    #[test]
    fn exact_lp_with_equality_and_infeasible() {
        let f = Field::cyclotomic(3).unwrap();
        let th = f.theta();
        // max θ x subject to x + y = 1
        let a = vec![vec![f.one(), f.one()]];
        let sol = solve_standard(&a, &[f.one()], &[th.clone(), f.zero()], &f.one());
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, th);
        // x = −1 infeasible
        let sol = solve_standard(&[vec![f.one()]], &[-f.one()], &[f.zero()], &f.one());
        assert_eq!(sol.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded() {
        let a = vec![vec![1.0, -1.0]];
        let sol = solve_standard(&a, &[0.0], &[1.0, 0.0], &1.0);
        assert_eq!(sol.status, LpStatus::Unbounded);
    }
}
