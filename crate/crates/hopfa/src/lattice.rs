//! Exact integer linear algebra: Smith normal form, kernels, and modular
//! linear solves.
//!
//! Matrices here are small (rows and columns bounded by the number of
//! positive roots, at most a few dozen), so a dense `BigInt` representation
//! and the classical reduction algorithm are entirely adequate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            a: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of `i64` entries. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.a[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.at(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = lik * rhs.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for j in 0..self.cols {
            self.a.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        for i in 0..self.rows {
            self.a.swap(i * self.cols + c1, i * self.cols + c2);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let add = k * self.at(src, j);
            *self.at_mut(dst, j) += add;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let add = k * self.at(i, src);
            *self.at_mut(i, dst) += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j).clone();
            *self.at_mut(r, j) = v;
        }
    }
}

/// Smith normal form `s = u * a * v` with `u`, `v` unimodular and `s`
/// diagonal with each diagonal entry dividing the next.
pub struct Smith {
    pub u: IntMat,
    pub s: IntMat,
    pub v: IntMat,
}

impl Smith {
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).filter(|&t| !self.s.at(t, t).is_zero()).count()
    }

    /// Nonzero diagonal entries d_1 | d_2 | ...
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .map(|t| self.s.at(t, t).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

/// Computes the Smith normal form of `a` by the classical pivot reduction.
pub fn smith(a: &IntMat) -> Smith {
    let mut s = a.clone();
    let mut u = IntMat::identity(a.rows());
    let mut v = IntMat::identity(a.cols());
    let n = a.rows().min(a.cols());

    for t in 0..n {
        loop {
            // Find the entry of minimal nonzero absolute value in the
            // remaining block and move it to (t, t).
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..s.rows() {
                for j in t..s.cols() {
                    if s.at(i, j).is_zero() {
                        continue;
                    }
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => s.at(i, j).abs() < s.at(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return Smith { u, s, v };
            };
            if pi != t {
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if pj != t {
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }

            // Reduce column t and row t by the pivot.
            let mut dirty = false;
            for i in (t + 1)..s.rows() {
                if s.at(i, t).is_zero() {
                    continue;
                }
                let q = -s.at(i, t).div_floor(s.at(t, t));
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !s.at(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in (t + 1)..s.cols() {
                if s.at(t, j).is_zero() {
                    continue;
                }
                let q = -s.at(t, j).div_floor(s.at(t, t));
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !s.at(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // Pivot must divide every remaining entry; if not, fold the
            // offending row in and restart the reduction of this block.
            let mut fixed = true;
            'divcheck: for i in (t + 1)..s.rows() {
                for j in (t + 1)..s.cols() {
                    if !s.at(i, j).mod_floor(s.at(t, t)).is_zero() {
                        let one = BigInt::one();
                        s.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                        fixed = false;
                        break 'divcheck;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if s.at(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, s, v }
}

/// Basis of the left kernel `{ c : c^T a = 0 }`, one `Vec` per basis vector.
pub fn left_kernel(a: &IntMat) -> Vec<Vec<BigInt>> {
    let sm = smith(a);
    let r = sm.rank();
    (r..a.rows())
        .map(|i| (0..a.rows()).map(|j| sm.u.at(i, j).clone()).collect())
        .collect()
}

/// Basis of the right kernel `{ x : a x = 0 }`.
pub fn right_kernel(a: &IntMat) -> Vec<Vec<BigInt>> {
    let sm = smith(a);
    let r = sm.rank();
    (r..a.cols())
        .map(|j| (0..a.cols()).map(|i| sm.v.at(i, j).clone()).collect())
        .collect()
}

/// Solves `a x = b (mod m)` for integer `x`, returning one solution
/// reduced into `[0, m)`, or `None` if the system is unsolvable.
pub fn solve_mod(a: &IntMat, b: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows());
    assert!(m > &BigInt::one());
    let sm = smith(a);
    let n = a.cols();
    // c = u * b
    let c: Vec<BigInt> = (0..a.rows())
        .map(|i| (0..a.rows()).map(|j| sm.u.at(i, j) * &b[j]).sum())
        .collect();
    let mut y = vec![BigInt::zero(); n];
    let k = a.rows().min(n);
    for t in 0..k {
        let d = sm.s.at(t, t);
        if d.is_zero() {
            if !c[t].mod_floor(m).is_zero() {
                return None;
            }
            continue;
        }
        // d * y_t = c_t (mod m)
        let g = d.gcd(m);
        if !c[t].mod_floor(&g).is_zero() {
            return None;
        }
        let m1 = m / &g;
        let d1 = (d / &g).mod_floor(&m1);
        let c1 = (&c[t] / &g).mod_floor(&m1);
        let inv = mod_inverse(&d1, &m1)?;
        y[t] = (c1 * inv).mod_floor(&m1);
    }
    for t in k..a.rows() {
        if !c[t].mod_floor(m).is_zero() {
            return None;
        }
    }
    // x = v * y
    let x: Vec<BigInt> = (0..n)
        .map(|i| {
            let s: BigInt = (0..n).map(|j| sm.v.at(i, j) * &y[j]).sum();
            s.mod_floor(m)
        })
        .collect();
    Some(x)
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}
