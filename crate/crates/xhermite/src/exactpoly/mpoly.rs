use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{is_neg, rat, rat_to_f64, rat_to_string, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    M = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::M];

    pub fn idx(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::M => "m",
        }
    }

    /// Grading deg x = 1, deg y = 2, deg z = -1; m is weightless.
    pub fn weight(self) -> i32 {
        match self {
            Var::X => 1,
            Var::Y => 2,
            Var::Z => -1,
            Var::M => 0,
        }
    }
}

pub type Exps = [i32; 4];

/// Result of a weighted-degree query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weighted {
    Zero,
    Homogeneous(i32),
    Inhomogeneous,
}

/// Laurent polynomial over the rationals in the variables x, y, z, m.
///
/// Terms are kept in a map ordered lexicographically by exponent vector, so
/// the last entry is the leading term in lex order x > y > z > m.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct MPoly {
    terms: BTreeMap<Exps, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        MPoly::monomial([0; 4], c)
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        MPoly::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut ex = [0; 4];
        ex[v.idx()] = e;
        MPoly::monomial(ex, Rat::one())
    }

    pub fn x() -> Self {
        MPoly::var(Var::X)
    }
    pub fn y() -> Self {
        MPoly::var(Var::Y)
    }
    pub fn z() -> Self {
        MPoly::var(Var::Z)
    }
    pub fn m() -> Self {
        MPoly::var(Var::M)
    }

    pub fn monomial(exps: Exps, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Rat)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exps, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; 4]).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0; 4])
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&[0; 4])
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, e: &Exps) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Exps, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Exps, &Rat)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &Exps, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(f, a)| (add_exps(e, f), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.idx()] != 0)
    }

    pub fn degree(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|e| e[v.idx()]).max()
    }

    pub fn min_degree(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|e| e[v.idx()]).min()
    }

    /// Componentwise minimum exponent vector (the monomial content).
    pub fn min_exps(&self) -> Exps {
        let mut out = [0; 4];
        for v in Var::ALL {
            out[v.idx()] = self.min_degree(v).unwrap_or(0);
        }
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k >= 0))
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let i = v.idx();
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, c * rat(e[i] as i64));
            }
        }
        out
    }

    pub fn nth_derivative(&self, v: Var, n: usize) -> MPoly {
        (0..n).fold(self.clone(), |p, _| p.derivative(v))
    }

    /// Coefficient of v^k, as a polynomial free of v.
    pub fn coeff_of(&self, v: Var, k: i32) -> MPoly {
        let i = v.idx();
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] == k)
                .map(|(e, c)| {
                    let mut f = *e;
                    f[i] = 0;
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Splits into powers of v with v-free coefficients.
    pub fn collect(&self, v: Var) -> BTreeMap<i32, MPoly> {
        let i = v.idx();
        let mut out: BTreeMap<i32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = *e;
            f[i] = 0;
            out.entry(e[i]).or_default().add_term(f, c.clone());
        }
        out
    }

    /// Substitutes a rational value for v. Negative powers need a nonzero value.
    pub fn eval_var(&self, v: Var, val: &Rat) -> MPoly {
        let i = v.idx();
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut f = *e;
            f[i] = 0;
            let p = rat_pow(val, e[i]);
            out.add_term(f, c * p);
        }
        out
    }

    /// Substitutes a polynomial for v. Negative powers require `img` to be a monomial.
    pub fn substitute(&self, v: Var, img: &MPoly) -> MPoly {
        let i = v.idx();
        let mut cache: BTreeMap<i32, MPoly> = BTreeMap::new();
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let k = e[i];
            let pk = cache
                .entry(k)
                .or_insert_with(|| {
                    if k >= 0 {
                        img.pow(k as u32)
                    } else {
                        let (me, mc) = img
                            .leading()
                            .filter(|_| img.is_monomial())
                            .expect("negative power of a non-monomial");
                        let inv = MPoly::monomial(neg_exps(me), mc.recip());
                        inv.pow((-k) as u32)
                    }
                })
                .clone();
            let mut f = *e;
            f[i] = 0;
            out += &pk.mul_monomial(&f, c);
        }
        out
    }

    /// Replaces each variable by a rational value.
    pub fn eval(&self, vals: &[Rat; 4]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, val) in e.iter().zip(vals) {
                if *k != 0 {
                    t *= rat_pow(val, *k);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, vals: [f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = rat_to_f64(c);
                for (k, val) in e.iter().zip(vals.iter()) {
                    if *k != 0 {
                        t *= val.powi(*k);
                    }
                }
                t
            })
            .sum()
    }

    pub fn weighted_degree(&self) -> Weighted {
        let mut degs = self
            .terms
            .keys()
            .map(|e| Var::ALL.iter().map(|v| v.weight() * e[v.idx()]).sum::<i32>());
        match degs.next() {
            None => Weighted::Zero,
            Some(d) => {
                if degs.all(|d2| d2 == d) {
                    Weighted::Homogeneous(d)
                } else {
                    Weighted::Inhomogeneous
                }
            }
        }
    }

    /// Exact quotient self / d, or None if d does not divide self.
    ///
    /// Lex-leading-term division; a quotient monomial below the ratio of
    /// trailing terms proves inexactness, which also guarantees termination
    /// for Laurent inputs.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let (dle, dlc) = d.leading().map(|(e, c)| (*e, c.clone()))?;
        if d.is_monomial() {
            return Some(self.mul_monomial(&neg_exps(&dle), &dlc.recip()));
        }
        let floor = sub_exps(self.trailing()?.0, d.trailing()?.0);
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((re, rc)) = r.leading().map(|(e, c)| (*e, c.clone())) {
            let qe = sub_exps(&re, &dle);
            if qe < floor {
                return None;
            }
            let qc = rc / &dlc;
            r -= &d.mul_monomial(&qe, &qc);
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Makes the lex-leading coefficient 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => MPoly::zero(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(e, c)| {
                    json!({
                        "coeff": rat_to_string(c),
                        "exps": {"x": e[0], "y": e[1], "z": e[2], "m": e[3]},
                    })
                })
                .collect(),
        )
    }

    /// Writes the polynomial using `names` for x, y, z, m.
    pub fn fmt_with(&self, names: [&str; 4]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_neg(c);
            let a = c.abs();
            if neg {
                s.push('-');
            } else if idx > 0 {
                s.push('+');
            }
            let mono = fmt_monomial(e, names);
            if mono.is_empty() {
                s.push_str(&rat_to_string(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&rat_to_string(&a));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

fn fmt_monomial(e: &Exps, names: [&str; 4]) -> String {
    let mut parts = Vec::new();
    for (k, name) in e.iter().zip(names) {
        match *k {
            0 => {}
            1 => parts.push(name.to_string()),
            k if k > 0 => parts.push(format!("{name}^{k}")),
            k => parts.push(format!("{name}^({k})")),
        }
    }
    parts.join("*")
}

pub(crate) fn rat_pow(r: &Rat, k: i32) -> Rat {
    if k >= 0 {
        num_traits::pow(r.clone(), k as usize)
    } else {
        num_traits::pow(r.recip(), (-k) as usize)
    }
}

pub(crate) fn add_exps(a: &Exps, b: &Exps) -> Exps {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub(crate) fn sub_exps(a: &Exps, b: &Exps) -> Exps {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

pub(crate) fn neg_exps(a: &Exps) -> Exps {
    [-a[0], -a[1], -a[2], -a[3]]
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(["x", "y", "z", "m"]))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> Self {
        MPoly::constant(c)
    }
}

impl<'a> Add<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, o: &'a MPoly) -> MPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &'a MPoly) -> MPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<'a> AddAssign<&'a MPoly> for MPoly {
    fn add_assign(&mut self, o: &'a MPoly) {
        for (e, c) in &o.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a MPoly> for MPoly {
    fn sub_assign(&mut self, o: &'a MPoly) {
        for (e, c) in &o.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Mul<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &'a MPoly) -> MPoly {
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut out = MPoly::zero();
        for (e, c) in &small.terms {
            for (f, d) in &big.terms {
                out.add_term(add_exps(e, f), c * d);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, o: MPoly) -> MPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, o: &'a MPoly) -> MPoly {
                (&self).$m(o)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, o: MPoly) -> MPoly {
                self.$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::frac;

    fn x() -> MPoly {
        MPoly::x()
    }
    fn y() -> MPoly {
        MPoly::y()
    }

    #[test]
    fn difference_of_squares() {
        let p = (&x() + &y()) * (&x() - &y());
        assert_eq!(p.to_string(), "x^2-y^2");
    }

    #[test]
    fn laurent_derivative() {
        let zi = MPoly::var_pow(Var::Z, -1);
        assert_eq!(zi.derivative(Var::Z), -MPoly::var_pow(Var::Z, -2));
    }

    #[test]
    fn partial_derivative() {
        // x^2 y - x y^3 z^4
        let p = &x().pow(2) * &y() - &x() * &y().pow(3) * MPoly::z().pow(4);
        let dp = p.derivative(Var::X);
        assert_eq!(dp, MPoly::int(2) * &x() * &y() - &y().pow(3) * MPoly::z().pow(4));
    }

    #[test]
    fn weighted_degrees() {
        let tau = x().pow(4) + MPoly::int(12) * y().pow(2);
        assert_eq!(tau.weighted_degree(), Weighted::Homogeneous(4));
        assert_eq!((x() + y()).weighted_degree(), Weighted::Inhomogeneous);
        let p = x().pow(3) * MPoly::z() * y();
        assert_eq!(p.weighted_degree(), Weighted::Homogeneous(4));
        let p = x().pow(3) * MPoly::var_pow(Var::Z, -1) * y();
        assert_eq!(p.weighted_degree(), Weighted::Homogeneous(6));
    }

    #[test]
    fn exact_division() {
        let a = &x() + &y();
        let b = &x() - &y();
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&(&x() + &MPoly::int(1))), None);
        let l = &p * &MPoly::var_pow(Var::Z, -3);
        assert_eq!(l.div_exact(&b), Some(&a * &MPoly::var_pow(Var::Z, -3)));
    }

    #[test]
    fn display_rational_and_laurent() {
        let p = MPoly::constant(frac(1, 3)) * x().pow(3) - MPoly::var_pow(Var::Z, -2);
        assert_eq!(p.to_string(), "1/3*x^3-z^(-2)");
    }

    #[test]
    fn substitution() {
        let p = x().pow(2) + y();
        let q = p.substitute(Var::X, &(&x() + &MPoly::int(1)));
        assert_eq!(q, x().pow(2) + MPoly::int(2) * x() + MPoly::int(1) + y());
        let r = MPoly::var_pow(Var::Y, -1).substitute(Var::Y, &MPoly::int(4).mul_monomial(&[0; 4], &frac(1, 1)));
        assert_eq!(r, MPoly::constant(frac(1, 4)));
    }
}
