//! Bell and Schur polynomials, bivariate Hermite polynomials, τ-functions and
//! the three constructions of exceptional Hermite polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::combinatorics::{self as comb, Partition};
use crate::error::{Error, Result};
use crate::exactpoly::{
    det_bareiss, det_laplace, factorial, frac, rat, rat_to_f64, rat_to_string, wronskian_matrix_poly, MPoly,
    RationalFn, Rat, Var,
};

static HERMITE: OnceLock<RwLock<Vec<MPoly>>> = OnceLock::new();

/// H_n(x, y) = Σ_j n!/((n−2j)! j!) x^{n−2j} y^j, cached.
pub fn hermite_h(n: usize) -> MPoly {
    let table = HERMITE.get_or_init(|| RwLock::new(Vec::new()));
    if let Some(h) = table.read().expect("hermite cache").get(n) {
        return h.clone();
    }
    let mut w = table.write().expect("hermite cache");
    while w.len() <= n {
        let k = w.len();
        w.push(hermite_explicit(k));
    }
    w[n].clone()
}

fn hermite_coeff(n: usize, j: usize) -> Rat {
    Rat::from_integer(factorial(n as u32) / (factorial((n - 2 * j) as u32) * factorial(j as u32)))
}

fn hermite_explicit(n: usize) -> MPoly {
    MPoly::from_terms((0..=n / 2).map(|j| ([(n - 2 * j) as i32, j as i32, 0, 0], hermite_coeff(n, j))))
}

/// H_n(a, b) for polynomial arguments.
pub fn hermite_at(n: usize, a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::zero();
    for j in 0..=n / 2 {
        let t = &a.pow((n - 2 * j) as u32) * &b.pow(j as u32);
        out += &t.scale(&hermite_coeff(n, j));
    }
    out
}

/// Classical h_n(x) = 2^n H_n(x, −1/4).
pub fn hermite_classical(n: usize) -> MPoly {
    hermite_h(n)
        .eval_var(Var::Y, &frac(-1, 4))
        .scale(&Rat::from_integer(BigInt::from(2).pow(n as u32)))
}

/// Polynomial in the times t_1, t_2, ...; exponent vectors are trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TimePoly {
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl TimePoly {
    pub fn constant(c: Rat) -> Self {
        let mut t = TimePoly::default();
        t.add_term(Vec::new(), c);
        t
    }

    /// t_i (1-based).
    pub fn time(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        let mut t = TimePoly::default();
        t.add_term(e, Rat::one());
        t
    }

    fn add_term(&mut self, mut e: Vec<u32>, c: Rat) {
        while e.last() == Some(&0) {
            e.pop();
        }
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    /// Weighted degree under deg t_i = i, if homogeneous.
    pub fn weighted_degree(&self) -> Option<usize> {
        let mut it = self
            .terms
            .keys()
            .map(|e| e.iter().enumerate().map(|(i, k)| (i + 1) * *k as usize).sum::<usize>());
        let d = it.next()?;
        it.all(|d2| d2 == d).then_some(d)
    }

    /// Substitutes t_i ↦ args[i−1] (missing arguments are zero).
    pub fn eval_at(&self, args: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e.len() > args.len() && e[args.len()..].iter().any(|&k| k > 0) {
                continue;
            }
            let mut t = MPoly::constant(c.clone());
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    t = &t * &args[i].pow(*k);
                }
            }
            out += &t;
        }
        out
    }
}

impl crate::exactpoly::Ring for TimePoly {
    fn zero() -> Self {
        TimePoly::default()
    }
    fn one() -> Self {
        TimePoly::constant(<Rat as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut r = TimePoly::default();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                let n = e.len().max(f.len());
                let g: Vec<u32> = (0..n)
                    .map(|i| e.get(i).copied().unwrap_or(0) + f.get(i).copied().unwrap_or(0))
                    .collect();
                r.add_term(g, c * d);
            }
        }
        r
    }
    fn neg(&self) -> Self {
        TimePoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
    fn div_exact(&self, _o: &Self) -> Option<Self> {
        None
    }
}

impl fmt::Display for TimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                s.push('-');
            } else if idx > 0 {
                s.push('+');
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { format!("t{}", i + 1) } else { format!("t{}^{k}", i + 1) })
                .collect();
            if mono.is_empty() {
                s.push_str(&rat_to_string(&a));
            } else {
                if !a.is_one() {
                    s.push_str(&rat_to_string(&a));
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for TimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TimePoly({self})")
    }
}

/// Bell polynomials B_0..=B_k over any ring, from k B_k = Σ_i i t_i B_{k−i}.
fn bell_sequence<R: crate::exactpoly::Ring>(k: usize, t: impl Fn(usize) -> R, scale: impl Fn(&R, &Rat) -> R) -> Vec<R> {
    let mut b: Vec<R> = vec![R::one()];
    for n in 1..=k {
        let mut acc = R::zero();
        for i in 1..=n {
            let ti = t(i);
            if ti.is_zero() || b[n - i].is_zero() {
                continue;
            }
            acc = acc.add(&scale(&ti.mul(&b[n - i]), &rat(i as i64)));
        }
        b.push(scale(&acc, &frac(1, n as i64)));
    }
    b
}

/// B_k in the full set of times.
pub fn bell_full(k: usize) -> TimePoly {
    let scale = |p: &TimePoly, c: &Rat| TimePoly {
        terms: p.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
    };
    bell_sequence(k, TimePoly::time, scale).pop().unwrap()
}

/// B_0..=B_k evaluated at t_i = args[i−1] (zero past the end).
pub fn bell_at(k: usize, args: &[MPoly]) -> Vec<MPoly> {
    bell_sequence(k, |i| args.get(i - 1).cloned().unwrap_or_else(MPoly::zero), |p, c| p.scale(c))
}

/// B_k(x, y, 0, ...); k! B_k = H_k.
pub fn bell_xy(k: usize) -> MPoly {
    bell_at(k, &[MPoly::x(), MPoly::y()]).pop().unwrap()
}

fn jacobi_trudi<R: crate::exactpoly::Ring>(lam: &Partition, bell: &[R]) -> Vec<Vec<R>> {
    let l = lam.len();
    (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let idx = lam.part(i) - i as i64 + j as i64;
                    if idx < 0 {
                        R::zero()
                    } else {
                        bell[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// S^λ(t) = det(B_{λ_i − i + j}).
pub fn schur_poly(lam: &Partition) -> TimePoly {
    let n = lam.weight();
    let scale = |p: &TimePoly, c: &Rat| TimePoly {
        terms: p.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
    };
    let bell = bell_sequence(n + lam.len(), TimePoly::time, scale);
    det_laplace(&jacobi_trudi(lam, &bell))
}

/// S^λ evaluated at polynomial times.
pub fn schur_at(lam: &Partition, args: &[MPoly]) -> MPoly {
    let bell = bell_at(lam.weight() + lam.len(), args);
    det_laplace(&jacobi_trudi(lam, &bell))
}

/// N!/d_λ = Π k_i! / Π_{i<j} (k_i − k_j).
pub fn hook_normalization(lam: &Partition) -> Rat {
    let ks = comb::k_set(lam);
    let num = ks.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k as u32));
    Rat::new(num, vandermonde(&ks))
}

/// Π_{i<j} (k_i − k_j).
fn vandermonde(ks: &[i64]) -> BigInt {
    let mut d = BigInt::one();
    for i in 0..ks.len() {
        for j in i + 1..ks.len() {
            d *= ks[i] - ks[j];
        }
    }
    d
}

/// τ^λ(x, y), monic in x.
pub fn tau(lam: &Partition) -> MPoly {
    schur_at(lam, &[MPoly::x(), MPoly::y()]).scale(&hook_normalization(lam))
}

/// τ via the Hermite Wronskian.
pub fn tau_wronskian(lam: &Partition) -> MPoly {
    let ks = comb::k_set(lam);
    let hs: Vec<MPoly> = ks.iter().rev().map(|&k| hermite_h(k as usize)).collect();
    let w = det_bareiss(wronskian_matrix_poly(&hs, Var::X, hs.len()));
    w.scale(&Rat::from_integer(vandermonde(&ks)).recip())
}

/// Φ^λ = (N!/d_λ) S^λ(x − 1/z, y − 1/(2z²), −1/(3z³), ...).
pub fn phi_lambda(lam: &Partition) -> MPoly {
    let n = lam.weight();
    let mut args = Vec::with_capacity(n.max(2));
    for i in 1..=n.max(2) {
        let mut t = MPoly::var_pow(Var::Z, -(i as i32)).scale(&frac(-1, i as i64));
        if i == 1 {
            t = &t + &MPoly::x();
        } else if i == 2 {
            t = &t + &MPoly::y();
        }
        args.push(t);
    }
    schur_at(lam, &args).scale(&hook_normalization(lam))
}

fn check_degree(lam: &Partition, n: i64) -> Result<i64> {
    let m = n - lam.weight() as i64;
    if !comb::in_j(lam, m) {
        return Err(Error::ExceptionalDegree { n });
    }
    Ok(m)
}

/// H^λ_n from the Wronskian of H_{k_ℓ}, ..., H_{k_1}, H_{n−N+ℓ}.
pub fn xhermite_wronskian(lam: &Partition, n: i64) -> Result<MPoly> {
    let m = check_degree(lam, n)?;
    let ks = comb::k_set(lam);
    let top = m + lam.len() as i64;
    let mut fs: Vec<MPoly> = ks.iter().rev().map(|&k| hermite_h(k as usize)).collect();
    fs.push(hermite_h(top as usize));
    let w = det_bareiss(wronskian_matrix_poly(&fs, Var::X, fs.len()));
    let mut d = vandermonde(&ks);
    for k in &ks {
        d *= top - k;
    }
    Ok(w.scale(&Rat::from_integer(d).recip()))
}

/// H^λ_n = τ^{(n−N) ▷ λ}.
pub fn xhermite_insertion(lam: &Partition, n: i64) -> Result<MPoly> {
    let m = check_degree(lam, n)?;
    Ok(tau(&comb::insert(lam, m)?))
}

/// R^λ_m = H^λ_{m+N} / τ^λ.
pub fn rational_r(lam: &Partition, m: i64) -> Result<RationalFn> {
    if !comb::in_j(lam, m) {
        return Err(Error::InMaya { m });
    }
    let h = xhermite_wronskian(lam, m + lam.weight() as i64)?;
    Ok(RationalFn::new(h, tau(lam)))
}

/// The exceptional family over the first few admissible degrees.
#[derive(Clone, Debug)]
pub struct XHermiteFamily {
    pub lambda: Partition,
    pub n: usize,
    pub len: usize,
    pub tau: MPoly,
    pub members: BTreeMap<i64, MPoly>,
}

impl XHermiteFamily {
    pub fn build(lam: &Partition, count: usize) -> Result<Self> {
        let members = comb::i_smallest(lam, count)
            .into_iter()
            .map(|n| Ok((n, xhermite_wronskian(lam, n)?)))
            .collect::<Result<_>>()?;
        Ok(XHermiteFamily {
            lambda: lam.clone(),
            n: lam.weight(),
            len: lam.len(),
            tau: tau(lam),
            members,
        })
    }

    /// Degrees below the largest member that the family skips.
    pub fn missing_degrees(&self) -> Vec<i64> {
        let top = self.members.keys().next_back().copied().unwrap_or(0);
        (0..top).filter(|n| !self.members.contains_key(n)).collect()
    }
}

/// 2 (−πy)^{1/2} (−2y)^k r, the square-root factor kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormingConstant {
    pub power: i64,
    pub rational: Rat,
}

impl NormingConstant {
    pub fn eval_f64(&self, y: f64) -> f64 {
        2.0 * (-std::f64::consts::PI * y).sqrt() * (-2.0 * y).powi(self.power as i32) * rat_to_f64(&self.rational)
    }

    pub fn to_json(&self) -> Value {
        json!({"sqrt_factor": "2*(-pi*y)^(1/2)", "power_of_minus_2y": self.power, "rational": rat_to_string(&self.rational)})
    }
}

/// ν_n(y) = 2 (−πy)^{1/2} (−2y)^n n!.
pub fn norming_classical(n: usize) -> NormingConstant {
    NormingConstant { power: n as i64, rational: Rat::from_integer(factorial(n as u32)) }
}

/// ν^λ_m(y) = 2 (−πy)^{1/2} (−2y)^m (m+ℓ)!/κ(m).
pub fn norming(lam: &Partition, m: i64) -> Result<NormingConstant> {
    if !comb::in_j(lam, m) {
        return Err(Error::InMaya { m });
    }
    let kap = comb::kappa_poly(lam).eval_int(m);
    assert!(!kap.is_zero(), "κ vanishes on J");
    let f = factorial((m + lam.len() as i64) as u32);
    Ok(NormingConstant { power: m, rational: Rat::from_integer(f) / kap })
}

/// Memo of τ per partition; used where many insertions repeat.
pub fn tau_cached(cache: &mut HashMap<Partition, MPoly>, lam: &Partition) -> MPoly {
    cache.entry(lam.clone()).or_insert_with(|| tau(lam)).clone()
}
