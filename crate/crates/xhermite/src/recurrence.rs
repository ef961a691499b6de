//! Critical degrees and recurrence relations Θ_q(m, y, S_m) R_m = σ_q R_m.
//!
//! The unknown shift symbol is
//! π♮(m, y, z) = Σ_k γ_k(m) α_k(m) y^{(q−k)/2} z^{−k},  k ∈ {−q, −q+2, ..., q},
//! with α_k(m) = Σ_{a ≤ b_k} α_{ka} m^a for k ≥ 0 and
//! α_{−k}(m) = (−2)^k α_k(m+k). Lifting π♮ to π(x, y, z) and conjugating with
//! 𝐇(y, z) gives π̂; the recurrence exists iff π̂ has no positive powers of z.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::combinatorics::{self as comb, Partition};
use crate::error::{Error, Result};
use crate::exactpoly::{gcd, rank, rat, rat_to_string, rref, MPoly, RationalFn, Rat, UniPoly, Var};
use crate::hermite_core::{rational_r, tau};
use crate::intertwiners::umbral_apply;

/// α_{ka}, the coefficient of m^a in α_k(m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unknown {
    pub k: i64,
    pub a: u32,
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha[{},{}]", self.k, self.a)
    }
}

#[derive(Clone, Debug)]
pub struct PiNatural {
    pub lambda: Partition,
    pub q: i64,
    /// Lexicographic: k ascending, then a ascending.
    pub unknowns: Vec<Unknown>,
    pub gammas: BTreeMap<i64, UniPoly>,
    /// b_k = (q+k)/2 − g_k for k ≥ 0.
    pub bounds: BTreeMap<i64, i64>,
}

fn band(q: i64) -> impl Iterator<Item = i64> {
    (0..=q).map(move |i| -q + 2 * i)
}

fn pow_i(b: i64, e: u32) -> Rat {
    Rat::from_integer(num_bigint::BigInt::from(b).pow(e))
}

impl PiNatural {
    /// α_k(m) for the given unknown values.
    pub fn alpha(&self, k: i64, vals: &[Rat]) -> UniPoly {
        if k < 0 {
            return self.alpha(-k, vals).shift(&rat(-k)).scale(&pow_i(-2, (-k) as u32));
        }
        let mut c = Vec::new();
        for (u, v) in self.unknowns.iter().zip(vals) {
            if u.k == k {
                let a = u.a as usize;
                if c.len() <= a {
                    c.resize(a + 1, Rat::zero());
                }
                c[a] = v.clone();
            }
        }
        UniPoly::from_coeffs(c)
    }

    /// π♮_{q,k}(m) = γ_k(m) α_k(m).
    pub fn coeff(&self, k: i64, vals: &[Rat]) -> UniPoly {
        &self.gammas[&k] * &self.alpha(k, vals)
    }

    /// π♮(m, y, z) as a polynomial with m in the m slot.
    pub fn to_mpoly(&self, vals: &[Rat]) -> MPoly {
        let mut out = MPoly::zero();
        for k in band(self.q) {
            let c = self.coeff(k, vals).to_mpoly(Var::M);
            let e = [0, ((self.q - k) / 2) as i32, -k as i32, 0];
            out += &c.mul_monomial(&e, &Rat::one());
        }
        out
    }

    fn unit(&self, idx: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.unknowns.len()];
        v[idx] = Rat::one();
        v
    }
}

/// The generic symbol with one unknown per admissible α_{ka}.
pub fn pinat_generic(lam: &Partition, q: i64) -> Result<PiNatural> {
    if q < 1 || !comb::is_q_core(lam, q) {
        return Err(Error::NotCore { q });
    }
    let mut gammas = BTreeMap::new();
    let mut bounds = BTreeMap::new();
    let mut unknowns = Vec::new();
    for k in band(q) {
        let (g, p) = comb::gamma_poly(lam, k);
        gammas.insert(k, p);
        if k >= 0 {
            let b = (q + k) / 2 - g.len() as i64;
            bounds.insert(k, b);
            unknowns.extend((0..=b).map(|a| Unknown { k, a: a as u32 }));
        }
    }
    Ok(PiNatural { lambda: lam.clone(), q, unknowns, gammas, bounds })
}

/// The π with π(∂_z, y, z) z^m = π♮(m, y, z) z^m: F_i(m) z^e ↦ x^i z^{i+e}.
pub fn lift_pi(pinat: &MPoly) -> Result<MPoly> {
    let mut out = MPoly::zero();
    for (e, cz) in pinat.collect(Var::Z) {
        for (j, cy) in cz.collect(Var::Y) {
            let u = UniPoly::from_mpoly(&cy, Var::M)
                .ok_or_else(|| Error::NotPolynomial(format!("{cy} is not polynomial in m")))?;
            for (i, c) in u.to_falling_basis().into_iter().enumerate() {
                if !c.is_zero() {
                    out.add_term([i as i32, j, i as i32 + e, 0], c);
                }
            }
        }
    }
    Ok(out)
}

/// Homogeneous constraints π̂_{ik} = 0 for i > k, linear in the unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub pinat: PiNatural,
    /// Row (i, k) is the coefficient of x^i y^{(q−k)/2} z^{i−k} in π̂.
    pub rows: BTreeMap<(i64, i64), Vec<Rat>>,
    /// π̂ for each unit unknown.
    pub hat_basis: Vec<MPoly>,
}

/// Rank data used to explain a non-critical degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnosis {
    pub rank: usize,
    pub unknowns: usize,
    /// Unknowns whose column is not identically zero.
    pub active_unknowns: Vec<Unknown>,
    pub table_rank: usize,
    /// The k ≥ 0 table has full column rank on the active unknowns.
    pub maximal_rank: bool,
}

impl LinearSystem {
    pub fn q(&self) -> i64 {
        self.pinat.q
    }

    pub fn unknowns(&self) -> &[Unknown] {
        &self.pinat.unknowns
    }

    pub fn column(&self, k: i64, a: u32) -> Option<usize> {
        self.unknowns().iter().position(|u| u.k == k && u.a == a)
    }

    pub fn row(&self, i: i64, k: i64) -> Option<&[Rat]> {
        self.rows.get(&(i, k)).map(|r| r.as_slice())
    }

    pub fn matrix(&self) -> Vec<Vec<Rat>> {
        self.rows.values().cloned().collect()
    }

    /// Rows with k ≥ 0.
    pub fn table(&self) -> BTreeMap<(i64, i64), Vec<Rat>> {
        self.rows.iter().filter(|((_, k), _)| *k >= 0).map(|(key, r)| (*key, r.clone())).collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix())
    }

    /// α_{q,0} is lex-last; it is free iff it is not a pivot.
    pub fn is_critical(&self) -> bool {
        let last = self.unknowns().len() - 1;
        let mut m = self.matrix();
        !rref(&mut m).contains(&last)
    }

    /// α_{q,0} = 1, every other free unknown 0.
    pub fn solve(&self) -> Result<Vec<Rat>> {
        let n = self.unknowns().len();
        let mut m = self.matrix();
        let pivots = rref(&mut m);
        if pivots.contains(&(n - 1)) {
            return Err(Error::NotCritical { q: self.q() });
        }
        let mut vals = vec![Rat::zero(); n];
        vals[n - 1] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            vals[p] = -m[r][n - 1].clone();
        }
        Ok(vals)
    }

    pub fn diagnose(&self) -> Diagnosis {
        let n = self.unknowns().len();
        let active: Vec<usize> = (0..n).filter(|&c| self.rows.values().any(|r| !r[c].is_zero())).collect();
        let table: Vec<Vec<Rat>> = self
            .table()
            .values()
            .map(|r| active.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let table_rank = rank(&table);
        Diagnosis {
            rank: self.rank(),
            unknowns: n,
            active_unknowns: active.iter().map(|&c| self.unknowns()[c]).collect(),
            table_rank,
            maximal_rank: table_rank == active.len(),
        }
    }

    /// π̂ for given unknown values.
    pub fn pi_hat(&self, vals: &[Rat]) -> MPoly {
        let mut out = MPoly::zero();
        for (b, v) in self.hat_basis.iter().zip(vals) {
            if !v.is_zero() {
                out += &b.scale(v);
            }
        }
        out
    }
}

pub fn build_system(lam: &Partition, q: i64) -> Result<LinearSystem> {
    let pinat = pinat_generic(lam, q)?;
    let n = pinat.unknowns.len();
    let mut rows: BTreeMap<(i64, i64), Vec<Rat>> = BTreeMap::new();
    let mut hat_basis = Vec::with_capacity(n);
    for idx in 0..n {
        let pi = lift_pi(&pinat.to_mpoly(&pinat.unit(idx)))?;
        let hat = umbral_apply(&MPoly::y(), &pi)?;
        for (e, c) in hat.terms() {
            let (i, j, zc) = (e[0] as i64, e[1] as i64, e[2] as i64);
            let k = q - 2 * j;
            debug_assert_eq!(zc, i - k, "π̂ is weighted homogeneous");
            if i > k {
                rows.entry((i, k)).or_insert_with(|| vec![Rat::zero(); n])[idx] = c.clone();
            }
        }
        hat_basis.push(hat);
    }
    rows.retain(|_, r| r.iter().any(|c| !c.is_zero()));
    Ok(LinearSystem { pinat, rows, hat_basis })
}

/// Θ(m, y, S) = Σ_s c_s(m, y) S^s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceOp {
    pub band: BTreeMap<i64, MPoly>,
}

impl DifferenceOp {
    pub fn coeff(&self, shift: i64) -> MPoly {
        self.band.get(&shift).cloned().unwrap_or_else(MPoly::zero)
    }

    /// Σ_s c_s(m) R_{m+s}; a nonzero coefficient on an index outside J is an error.
    pub fn apply_r(&self, lam: &Partition, m: i64) -> Result<RationalFn> {
        let mut out = RationalFn::zero();
        for (s, c) in &self.band {
            let cm = c.eval_var(Var::M, &rat(m));
            if cm.is_zero() {
                continue;
            }
            if !comb::in_j(lam, m + s) {
                return Err(Error::InMaya { m: m + s });
            }
            out = &out + &rational_r(lam, m + s)?.mul_poly(&cm);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.band
                .iter()
                .rev()
                .map(|(s, c)| json!({"shift": s, "coeff": c.to_string()}))
                .collect(),
        )
    }
}

impl fmt::Display for DifferenceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.band.iter().rev().map(|(s, c)| format!("({c})*S^{s}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub struct Recurrence {
    pub lambda: Partition,
    pub q: i64,
    pub sigma: MPoly,
    pub theta: DifferenceOp,
    /// π(x, y, z), x standing for ∂_z.
    pub pi: MPoly,
    pub pi_hat: MPoly,
    pub alpha: Vec<(Unknown, Rat)>,
    pub checked: Vec<i64>,
    pub verified: bool,
}

impl Recurrence {
    pub fn to_json(&self) -> Value {
        json!({
            "critical": true,
            "lambda": self.lambda.to_json(),
            "q": self.q,
            "sigma": self.sigma.to_string(),
            "theta": self.theta.to_json(),
            "pi": self.pi.to_string(),
            "alpha": self.alpha.iter().map(|(u, v)| json!({"k": u.k, "a": u.a, "value": rat_to_string(v)})).collect::<Vec<_>>(),
            "checked_m": self.checked,
            "verified": self.verified,
        })
    }
}

/// Θ coefficient at shift −k: (−2)^q 4^{−(q−k)/2} γ_k(m) α_k(m) y^{(q+k)/2}.
fn theta_from(pinat: &PiNatural, vals: &[Rat]) -> DifferenceOp {
    let q = pinat.q;
    let mut band_map = BTreeMap::new();
    for k in band(q) {
        let c = pinat.coeff(k, vals);
        if c.is_zero() {
            continue;
        }
        let f = pow_i(-2, q as u32) / pow_i(4, ((q - k) / 2) as u32);
        let p = c.to_mpoly(Var::M).mul_monomial(&[0, ((q + k) / 2) as i32, 0, 0], &f);
        band_map.insert(-k, p);
    }
    DifferenceOp { band: band_map }
}

/// Solves for the order-2q relation and checks it on the 6 smallest m ∈ J.
pub fn recurrence_relation(lam: &Partition, q: i64) -> Result<Recurrence> {
    let sys = build_system(lam, q)?;
    let vals = sys.solve()?;
    let pinat = &sys.pinat;
    let pi = lift_pi(&pinat.to_mpoly(&vals))?;
    let pi_hat = sys.pi_hat(&vals);
    if pi_hat.degree(Var::Z).is_some_and(|d| d > 0) {
        return Err(Error::NotCritical { q });
    }
    let sigma = pi_hat.coeff_of(Var::Z, 0);
    let theta = theta_from(pinat, &vals);
    let checked = comb::j_smallest(lam, 6);
    let mut verified = true;
    for &m in &checked {
        let lhs = theta.apply_r(lam, m)?;
        let rhs = rational_r(lam, m)?.mul_poly(&sigma);
        if lhs != rhs {
            verified = false;
            break;
        }
    }
    let alpha = pinat.unknowns.iter().copied().zip(vals).collect();
    Ok(Recurrence { lambda: lam.clone(), q, sigma, theta, pi, pi_hat, alpha, checked, verified })
}

/// τ has only simple roots in x for generic y.
pub fn tau_has_simple_roots(lam: &Partition) -> bool {
    let t = tau(lam);
    !gcd(&t, &t.derivative(Var::X)).has_var(Var::X)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalDegrees {
    pub qmax: i64,
    pub cores: Vec<i64>,
    pub critical: Vec<i64>,
    pub simple_roots: bool,
    /// {N+1, ..., qmax} when τ has simple roots.
    pub predicted: Option<Vec<i64>>,
}

impl CriticalDegrees {
    pub fn consistent(&self) -> Option<bool> {
        self.predicted.as_ref().map(|p| *p == self.critical)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "qmax": self.qmax,
            "q_cores": self.cores,
            "critical_degrees": self.critical,
            "simple_roots": self.simple_roots,
            "predicted": self.predicted,
            "consistent": self.consistent(),
        })
    }
}

pub fn critical_degrees_dual(lam: &Partition, qmax: i64) -> Result<CriticalDegrees> {
    let mut cores = Vec::new();
    let mut critical = Vec::new();
    for q in 1..=qmax {
        if !comb::is_q_core(lam, q) {
            continue;
        }
        cores.push(q);
        if build_system(lam, q)?.is_critical() {
            critical.push(q);
        }
    }
    let simple_roots = tau_has_simple_roots(lam);
    let n = lam.weight() as i64;
    let predicted = simple_roots.then(|| (n + 1..=qmax).collect());
    Ok(CriticalDegrees { qmax, cores, critical, simple_roots, predicted })
}

/// Monic antiderivative of x^q τ with zero constant term.
pub fn sigma_basis_simple(lam: &Partition, q: u32) -> Result<MPoly> {
    if !tau_has_simple_roots(lam) {
        return Err(Error::RepeatedRoots);
    }
    let integrand = &MPoly::x().pow(q) * &tau(lam);
    let mut out = MPoly::zero();
    for (e, c) in integrand.terms() {
        let d = e[0] + 1;
        out.add_term([d, e[1], e[2], e[3]], c / rat(d as i64));
    }
    let top = rat(q as i64 + lam.weight() as i64 + 1);
    Ok(out.scale(&top))
}
