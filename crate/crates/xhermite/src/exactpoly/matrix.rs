//! Determinants and elimination over exact commutative rings.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::mpoly::{MPoly, Var};
use super::ratfn::RationalFn;
use super::Rat;

/// Commutative ring with exact division where it exists.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// self / o when the quotient lies in the ring.
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        MPoly::div_exact(self, o)
    }
}

impl Ring for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn one() -> Self {
        RationalFn::one()
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
}

/// Fraction-free determinant. Every intermediate division is exact.
pub fn det_bareiss<R: Ring>(mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    if n == 0 {
        return R::one();
    }
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign_flip = !sign_flip;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev).expect("Bareiss step is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// Division-free Laplace expansion memoized on the set of used columns.
/// Cost O(2^n n) ring products; meant for n up to about 12.
pub fn det_laplace<R: Ring>(a: &[Vec<R>]) -> R {
    let n = a.len();
    assert!(n < 31, "matrix too large for subset expansion");
    let mut memo: HashMap<u32, R> = HashMap::new();
    fn go<R: Ring>(a: &[Vec<R>], row: usize, used: u32, memo: &mut HashMap<u32, R>) -> R {
        let n = a.len();
        if row == n {
            return R::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = R::zero();
        let mut parity = false;
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            if !a[row][c].is_zero() {
                let sub = go(a, row + 1, used | (1 << c), memo);
                if !sub.is_zero() {
                    let t = a[row][c].mul(&sub);
                    acc = if parity { acc.sub(&t) } else { acc.add(&t) };
                }
            }
            parity = !parity;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(a, 0, 0, &mut memo)
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !Zero::is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !Zero::is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by fraction-free elimination with row and column search.
pub fn rank<R: Ring>(m: &[Vec<R>]) -> usize {
    let mut a: Vec<Vec<R>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = R::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = a[i][j].mul(&a[r][c]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = t.div_exact(&prev).expect("exact");
            }
            a[i][c] = R::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// rows x fs.len() matrix of derivatives 0..rows-1 of rational functions.
pub fn wronskian_matrix(fs: &[RationalFn], v: Var, rows: usize) -> Vec<Vec<RationalFn>> {
    let mut out = Vec::with_capacity(rows);
    let mut cur: Vec<RationalFn> = fs.to_vec();
    for _ in 0..rows {
        let next = cur.iter().map(|f| f.derivative(v)).collect();
        out.push(std::mem::replace(&mut cur, next));
    }
    out
}

/// Wronskian determinant of polynomials.
pub fn wronskian(fs: &[MPoly], v: Var) -> MPoly {
    det_bareiss(wronskian_matrix_poly(fs, v, fs.len()))
}

pub fn wronskian_rf(fs: &[RationalFn], v: Var) -> RationalFn {
    det_bareiss(wronskian_matrix(fs, v, fs.len()))
}

/// rows x fs.len() matrix of derivatives 0..rows-1.
pub fn wronskian_matrix_poly(fs: &[MPoly], v: Var, rows: usize) -> Vec<Vec<MPoly>> {
    let mut out = Vec::with_capacity(rows);
    let mut cur: Vec<MPoly> = fs.to_vec();
    for _ in 0..rows {
        let next = cur.iter().map(|f| f.derivative(v)).collect();
        out.push(std::mem::replace(&mut cur, next));
    }
    out
}

/// Cofactors C_0..C_n of the last column of Wr[f_1, ..., f_n, g], so that
/// Wr[f_1, ..., f_n, g] = sum_j C_j g^{(j)}. C_n is Wr[f_1, ..., f_n].
pub fn wronskian_cofactors(fs: &[MPoly], v: Var) -> Vec<MPoly> {
    let n = fs.len();
    let rows = wronskian_matrix_poly(fs, v, n + 1);
    (0..=n)
        .map(|j| {
            let minor: Vec<Vec<MPoly>> = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, r)| r.clone())
                .collect();
            let d = det_bareiss(minor);
            if (n + j) % 2 == 1 {
                -d
            } else {
                d
            }
        })
        .collect()
}
