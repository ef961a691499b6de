use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mpoly::{MPoly, Var};
use super::{rat, Rat};

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn ident() -> Self {
        UniPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::from_coeffs(c.iter().map(|&v| rat(v)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots<I: IntoIterator<Item = i64>>(roots: I) -> Self {
        roots
            .into_iter()
            .fold(UniPoly::one(), |p, r| &p * &UniPoly::from_ints(&[-r, 1]))
    }

    /// Falling factorial F_k(m) = m(m-1)...(m-k+1).
    pub fn falling(k: u32) -> Self {
        UniPoly::from_roots(0..k as i64)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, v: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * v + c)
    }

    pub fn eval_int(&self, v: i64) -> Rat {
        self.eval(&rat(v))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// p(m + k).
    pub fn shift(&self, k: &Rat) -> Self {
        let lin = UniPoly::from_coeffs(vec![k.clone(), Rat::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| &(&acc * &lin) + &UniPoly::constant(c.clone()))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= c * &f;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(r))
    }

    /// Coordinates in the falling-factorial basis: p = sum c_i F_i.
    pub fn to_falling_basis(&self) -> Vec<Rat> {
        let mut rem = self.clone();
        let n = self.coeffs.len();
        let mut out = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let c = rem.coeff(i);
            if !c.is_zero() {
                rem = &rem - &UniPoly::falling(i as u32).scale(&c);
                out[i] = c;
            }
        }
        debug_assert!(rem.is_zero());
        out
    }

    pub fn to_mpoly(&self, v: Var) -> MPoly {
        MPoly::from_terms(self.coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = [0; 4];
            e[v.idx()] = i as i32;
            (e, c.clone())
        }))
    }

    /// Reads p as a polynomial in v alone; None if other variables occur.
    pub fn from_mpoly(p: &MPoly, v: Var) -> Option<Self> {
        let mut coeffs = Vec::new();
        for (e, c) in p.terms() {
            for w in Var::ALL {
                if w != v && e[w.idx()] != 0 {
                    return None;
                }
            }
            let k = e[v.idx()];
            if k < 0 {
                return None;
            }
            let k = k as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rat::zero());
            }
            coeffs[k] += c;
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    pub fn fmt_var(&self, name: &str) -> String {
        let mut names = ["x", "y", "z", "m"];
        names[3] = name;
        self.to_mpoly(Var::M).fmt_with(names)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("m"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl<'a> Add<&'a UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &'a UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}
