//! Partitions, Maya diagrams, index sets, insertion, and the κ/γ/g polynomials.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
pub use crate::exactpoly::UniPoly;
use crate::exactpoly::{rat, Rat};

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Trailing zeros are trimmed; panics on an increasing sequence.
    pub fn new(parts: &[u32]) -> Self {
        Partition::try_new(parts).expect("parts must be weakly decreasing")
    }

    pub fn try_new(parts: &[u32]) -> Result<Self> {
        let mut parts = parts.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part λ_i (1-based), zero past the end.
    pub fn part(&self, i: usize) -> i64 {
        self.parts.get(i.wrapping_sub(1)).map_or(0, |&p| p as i64)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// λ_{2i-1} = λ_{2i} for all i.
    pub fn is_even(&self) -> bool {
        self.len() % 2 == 0 && self.parts.chunks(2).all(|c| c[0] == c[1])
    }

    pub fn to_json(&self) -> Value {
        Value::from(self.parts.clone())
    }

    /// Parses "2,2" or "" (the empty partition).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::try_new(&parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of n, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::new(cur));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight at most n.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Strictly decreasing integers; `origin_length` is the l used to build them.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IndexSet {
    pub values: Vec<i64>,
    pub origin_length: usize,
}

impl IndexSet {
    pub fn contains(&self, k: i64) -> bool {
        self.values.contains(&k)
    }
}

/// m_i = λ_i − i for i = 1..count.
pub fn maya_values(lam: &Partition, count: usize) -> Vec<i64> {
    (1..=count).map(|i| lam.part(i) - i as i64).collect()
}

/// {m_i + l : i = 1..l}.
pub fn index_set(lam: &Partition, l: usize) -> Result<IndexSet> {
    if l < lam.len() {
        return Err(Error::LengthTooSmall { l: l as i64, len: lam.len() });
    }
    Ok(IndexSet {
        values: maya_values(lam, l).into_iter().map(|m| m + l as i64).collect(),
        origin_length: l,
    })
}

/// Index set of length ℓ(λ).
pub fn k_set(lam: &Partition) -> Vec<i64> {
    index_set(lam, lam.len()).expect("l = len").values
}

pub fn in_maya(lam: &Partition, m: i64) -> bool {
    let l = lam.len() as i64;
    m < -l || maya_values(lam, lam.len()).contains(&m)
}

/// Membership in J = Z \ M.
pub fn in_j(lam: &Partition, m: i64) -> bool {
    !in_maya(lam, m)
}

/// The `count` smallest elements of J.
pub fn j_smallest(lam: &Partition, count: usize) -> Vec<i64> {
    (-(lam.len() as i64)..).filter(|&m| in_j(lam, m)).take(count).collect()
}

/// The `count` smallest degrees n = m + N with m in J.
pub fn i_smallest(lam: &Partition, count: usize) -> Vec<i64> {
    let n = lam.weight() as i64;
    j_smallest(lam, count).into_iter().map(|m| m + n).collect()
}

/// m ▷ λ.
pub fn insert(lam: &Partition, m: i64) -> Result<Partition> {
    if !in_j(lam, m) {
        return Err(Error::InMaya { m });
    }
    let mut j = 0usize;
    while m + (j as i64) < lam.part(j + 1) {
        j += 1;
    }
    let mut parts: Vec<i64> = (1..=j).map(|i| lam.part(i) - 1).collect();
    parts.push(m + j as i64);
    parts.extend((j + 1..=lam.len()).map(|i| lam.part(i)));
    let parts: Vec<u32> = parts.into_iter().map(|p| p as u32).collect();
    Partition::try_new(&parts)
}

/// κ(m) = Π_{i≤ℓ} (m − m_i).
pub fn kappa_poly(lam: &Partition) -> UniPoly {
    UniPoly::from_roots(maya_values(lam, lam.len()))
}

/// κ_l(m) = Π_{k∈K_l} (m − k).
pub fn kappa_l_poly(lam: &Partition, l: usize) -> Result<UniPoly> {
    Ok(UniPoly::from_roots(index_set(lam, l)?.values))
}

/// G_q = (M + q) ∩ J, in decreasing order.
pub fn gamma_set(lam: &Partition, q: i64) -> Vec<i64> {
    let count = lam.len() + q.unsigned_abs() as usize;
    maya_values(lam, count)
        .into_iter()
        .map(|m| m + q)
        .filter(|&v| in_j(lam, v))
        .collect()
}

/// (G_q, γ_q) with γ_q(m) = Π_{i∈G_q} (m − i).
pub fn gamma_poly(lam: &Partition, q: i64) -> (Vec<i64>, UniPoly) {
    let g = gamma_set(lam, q);
    let p = UniPoly::from_roots(g.iter().copied());
    (g, p)
}

/// g_q = |G_q|.
pub fn g_count(lam: &Partition, q: i64) -> usize {
    gamma_set(lam, q).len()
}

/// M ⊆ M + q.
pub fn is_q_core(lam: &Partition, q: i64) -> bool {
    // M ⊆ M + q  iff  M − q ⊆ M  iff  G_{−q} = ∅
    g_count(lam, -q) == 0
}

/// Direct check of M ⊆ M + q over the finite window where the sets differ.
pub fn is_q_core_direct(lam: &Partition, q: i64) -> bool {
    let l = lam.len() as i64;
    let lo = -l - q.abs() - 1;
    let hi = lam.part(1) + q.abs() + 1;
    (lo..=hi).all(|v| !in_maya(lam, v) || in_maya(lam, v - q))
}

/// F_k(x) = Γ(x+1)/Γ(x−k+1).
pub fn falling_factorial(k: i64, x: &Rat) -> Result<Rat> {
    let mut acc = Rat::one();
    if k >= 0 {
        for i in 0..k {
            acc *= x - rat(i);
        }
    } else {
        for i in 1..=-k {
            let f = x + rat(i);
            if f.is_zero() {
                return Err(Error::Pole { k, arg: crate::exactpoly::rat_to_string(x) });
            }
            acc /= f;
        }
    }
    Ok(acc)
}

/// F_k as a rational function of m, returned as (numerator, denominator).
pub fn falling_factorial_poly(k: i64) -> (UniPoly, UniPoly) {
    if k >= 0 {
        (UniPoly::falling(k as u32), UniPoly::one())
    } else {
        (UniPoly::one(), UniPoly::from_roots((1..=-k).map(|i| -i)))
    }
}

/// κ(m)γ_k(m) = κ(m−k)γ_{−k}(m−k)F_k(m+ℓ), compared with denominators cleared.
pub fn check_reindexing(lam: &Partition, k: i64) -> bool {
    let l = rat(lam.len() as i64);
    let kap = kappa_poly(lam);
    let lhs = &kap * &gamma_poly(lam, k).1;
    let back = rat(-k);
    let rhs = &kap.shift(&back) * &gamma_poly(lam, -k).1.shift(&back);
    let (num, den) = falling_factorial_poly(k);
    &lhs * &den.shift(&l) == &rhs * &num.shift(&l)
}
