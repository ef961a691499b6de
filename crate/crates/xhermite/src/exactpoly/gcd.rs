//! Multivariate gcd over the rationals by content / primitive-part recursion.

use super::mpoly::{MPoly, Var};
use super::Rat;
use num_traits::One;

/// Monic gcd of two polynomials with non-negative exponents.
///
/// Laurent inputs are first cleared of their monomial content; the result is
/// then a genuine polynomial.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (ma, pa) = split_monomial(a);
    let (mb, pb) = split_monomial(b);
    let mut mono = [0; 4];
    for i in 0..4 {
        mono[i] = ma[i].min(mb[i]).max(0);
    }
    let g = gcd_poly(&pa, &pb);
    g.mul_monomial(&mono, &Rat::one()).monic()
}

/// Writes p = x^e * q with q not divisible by any variable.
fn split_monomial(p: &MPoly) -> ([i32; 4], MPoly) {
    let e = p.min_exps();
    let neg = [-e[0], -e[1], -e[2], -e[3]];
    (e, p.mul_monomial(&neg, &Rat::one()))
}

fn main_var(a: &MPoly, b: &MPoly) -> Option<Var> {
    Var::ALL.into_iter().find(|&v| a.has_var(v) || b.has_var(v))
}

fn gcd_poly(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b {
        return a.monic();
    }
    let v = match main_var(a, b) {
        Some(v) => v,
        None => return MPoly::one(),
    };
    // cheap exact-divisibility shortcuts
    if a.len() >= b.len() && a.div_exact(b).is_some() {
        return b.monic();
    }
    if b.len() > a.len() && b.div_exact(a).is_some() {
        return a.monic();
    }
    if !a.has_var(v) {
        return gcd_poly(a, &content(b, v));
    }
    if !b.has_var(v) {
        return gcd_poly(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let g_c = gcd_poly(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree(v) < q.degree(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        if q.degree(v) == Some(0) {
            // q primitive and free of v: gcd of primitive parts is trivial
            p = MPoly::one();
            break;
        }
        let r = prem(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_part(&r, v) };
    }
    let g_p = primitive_part(&p, v);
    (&g_c * &g_p).monic()
}

/// Gcd of the coefficients of p viewed as a polynomial in v.
fn content(p: &MPoly, v: Var) -> MPoly {
    let coeffs = p.collect(v);
    let mut it = coeffs.values();
    let mut g = match it.next() {
        Some(c) => c.monic(),
        None => return MPoly::zero(),
    };
    for c in it {
        if g.is_one() {
            break;
        }
        g = gcd_poly(&g, c);
    }
    g
}

fn primitive_part(p: &MPoly, v: Var) -> MPoly {
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// Pseudo-remainder of a by b with respect to v.
fn prem(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let db = b.degree(v).unwrap_or(0);
    let lb = b.coeff_of(v, db);
    let mut r = a.clone();
    while let Some(dr) = r.degree(v).filter(|&d| d >= db && !r.is_zero()) {
        let lr = r.coeff_of(v, dr);
        let mut shift = [0; 4];
        shift[v.idx()] = dr - db;
        let t = (&lr * b).mul_monomial(&shift, &Rat::one());
        r = &(&lb * &r) - &t;
    }
    r
}
