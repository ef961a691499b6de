//! Generating-function and annihilation checks on truncated series, one-point
//! functionals, and numeric orthogonality by Gauss–Hermite quadrature.
//!
//! The quadrature is the only floating-point code in the crate.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::combinatorics::{self as comb, Partition};
use crate::error::{Error, Result};
use crate::exactpoly::{factorial, rat, LaurentSeries, MPoly, RationalFn, Rat, Var};
use crate::hermite_core::{norming, phi_lambda, rational_r, tau, xhermite_insertion, xhermite_wronskian};
use crate::intertwiners::{k_star_cofactors, vacuum_series};

/// τΨ^λ truncated at z^order: coefficient at z^m is κ(m) H^λ_{m+N} / (m+ℓ)!.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveSeries {
    pub lambda: Partition,
    pub order: i32,
    pub coeffs: BTreeMap<i64, MPoly>,
}

impl WaveSeries {
    pub fn coeff(&self, m: i64) -> Result<MPoly> {
        if m > self.order as i64 {
            return Err(Error::Truncation { k: m as i32, order: self.order });
        }
        Ok(self.coeffs.get(&m).cloned().unwrap_or_else(MPoly::zero))
    }

    pub fn to_series(&self) -> LaurentSeries {
        LaurentSeries::from_polys(self.coeffs.iter().map(|(m, p)| (*m as i32, p.clone())).collect(), self.order)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.to_json(),
            "order": self.order,
            "coeffs": self.coeffs.iter().map(|(m, p)| json!({"m": m, "coeff": p.to_string()})).collect::<Vec<_>>(),
        })
    }
}

/// Termwise Wr[H_{k_ℓ}, ..., H_{k_1}, Ψ₀] / (Wr[H_{k_ℓ}, ..., H_{k_1}] z^ℓ), cleared by τ.
pub fn wave_series(lam: &Partition, order: i32) -> WaveSeries {
    let l = lam.len() as i64;
    let cof = k_star_cofactors(lam);
    let w = cof.last().unwrap().clone();
    let t = tau(lam);
    let mut coeffs = BTreeMap::new();
    for n in 0..=(order as i64 + l) {
        let h = crate::hermite_core::hermite_h(n as usize);
        let mut num = MPoly::zero();
        let mut d = h;
        for c in &cof {
            if d.is_zero() {
                break;
            }
            num += &(c * &d);
            d = d.derivative(Var::X);
        }
        if num.is_zero() {
            continue;
        }
        // num/w * τ, with w a constant multiple of τ
        let p = (&num * &t).div_exact(&w).expect("Wr[H_K] divides");
        let f = Rat::new(1.into(), factorial(n as u32));
        coeffs.insert(n - l, p.scale(&f));
    }
    WaveSeries { lambda: lam.clone(), order, coeffs }
}

/// Per-coefficient report of the generating-function check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingReport {
    pub pass: bool,
    /// Coefficients at m ∈ M vanish.
    pub maya_zero: bool,
    /// Coefficients equal κ(m)/(m+ℓ)! · τ R_m.
    pub factorized: bool,
    /// Φ Ψ₀ gives the same coefficients.
    pub miwa: bool,
    pub checked: Vec<i64>,
}

pub fn check_generating(lam: &Partition, order: i32) -> Result<GeneratingReport> {
    let l = lam.len() as i64;
    let ws = wave_series(lam, order);
    let kap = comb::kappa_poly(lam);
    let t = RationalFn::from_poly(tau(lam));
    let mut maya_zero = true;
    let mut factorized = true;
    let checked: Vec<i64> = (-l..=order as i64).collect();
    for &m in &checked {
        let c = ws.coeff(m)?;
        if !comb::in_j(lam, m) {
            maya_zero &= c.is_zero();
            continue;
        }
        let f = kap.eval_int(m) / Rat::from_integer(factorial((m + l) as u32));
        let via_r = &rational_r(lam, m)?.scale(&f) * &t;
        let via_ins = xhermite_insertion(lam, m + lam.weight() as i64)?.scale(&f);
        factorized &= via_r == RationalFn::from_poly(c.clone()) && via_ins == c;
    }
    let miwa_series = vacuum_series(order + l as i32).mul_poly(&phi_lambda(lam));
    let miwa = miwa_series.agrees_with(&ws.to_series()) && miwa_series.order() == order;
    Ok(GeneratingReport { pass: maya_zero && factorized && miwa, maya_zero, factorized, miwa, checked })
}

/// ⟨e^{(k)}_0(z), z^ℓ Φ e^{xz+yz²}⟩ = 0 for every k ∈ 𝒦.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub pass: bool,
    pub indices: Vec<i64>,
    pub values: Vec<MPoly>,
}

pub fn check_annihilation(lam: &Partition, order: i32) -> Result<AnnihilationReport> {
    let ks = comb::k_set(lam);
    if let Some(&kmax) = ks.first() {
        if kmax > order as i64 {
            return Err(Error::Truncation { k: kmax as i32, order });
        }
    }
    let sym = &phi_lambda(lam) * &MPoly::var_pow(Var::Z, lam.len() as i32);
    let series = vacuum_series(order).mul_poly(&sym);
    let mut values = Vec::new();
    for &k in &ks {
        let c = OnePointFunctional::derivative(k as usize).eval_series(&series)?;
        values.push(c.as_laurent().ok_or(Error::InexactDivision)?);
    }
    Ok(AnnihilationReport { pass: values.iter().all(|v| v.is_zero()), indices: ks, values })
}

/// c = Σ_k w_k e^{(k)}_ζ with polynomial weights; only ζ = 0 is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePointFunctional {
    pub zeta: Rat,
    pub weights: BTreeMap<usize, MPoly>,
}

impl OnePointFunctional {
    /// e^{(k)}_0.
    pub fn derivative(k: usize) -> Self {
        OnePointFunctional { zeta: Rat::zero(), weights: BTreeMap::from([(k, MPoly::one())]) }
    }

    /// ĉ_y(e^{(n)}_0) = Σ_j n!/((n−2j)! j!) y^j e^{(n−2j)}_0.
    pub fn hermite_transform(n: usize) -> Self {
        let mut weights = BTreeMap::new();
        for j in 0..=n / 2 {
            let c = factorial(n as u32) / (factorial((n - 2 * j) as u32) * factorial(j as u32));
            weights.insert(n - 2 * j, MPoly::y().pow(j as u32).scale(&Rat::from_integer(c)));
        }
        OnePointFunctional { zeta: Rat::zero(), weights }
    }

    /// Σ w_k f^{(k)}(ζ) for f a polynomial in v.
    pub fn eval_poly(&self, f: &MPoly, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (k, w) in &self.weights {
            let d = f.nth_derivative(v, *k).eval_var(v, &self.zeta);
            out += &(w * &d);
        }
        out
    }

    /// Σ w_k k! [z^k] f for a series in z; requires ζ = 0.
    pub fn eval_series(&self, f: &LaurentSeries) -> Result<RationalFn> {
        assert!(self.zeta.is_zero(), "series functionals are supported at ζ = 0");
        let mut out = RationalFn::zero();
        for (k, w) in &self.weights {
            let c = f.coeff(*k as i32)?;
            let kf = Rat::from_integer(factorial(*k as u32));
            out = &out + &c.mul_poly(w).scale(&kf);
        }
        Ok(out)
    }
}

/// ⟨c, f⟩ for a series argument.
pub fn functional_eval(c: &OnePointFunctional, f: &LaurentSeries) -> Result<RationalFn> {
    c.eval_series(f)
}

// ---------------------------------------------------------------------------
// Gauss–Hermite quadrature

/// Nodes and weights for ∫ e^{−t²} f(t) dt, n points.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, (Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let v = compute_gauss_hermite(n);
    cache.lock().unwrap().insert(n, v.clone());
    v
}

/// Orthonormal Hermite values (p_n(z), p_{n−1}(z)) for the weight e^{−t²}.
fn hermite_orthonormal(n: usize, z: f64) -> (f64, f64) {
    const PIM4: f64 = 0.751_125_544_464_942_5; // π^{-1/4}
    let mut p1 = PIM4;
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}

/// Roots are bracketed by sign changes on a grid finer than the smallest
/// root spacing, then polished by safeguarded Newton steps.
fn compute_gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!((1..=600).contains(&n), "node count out of range");
    let nf = n as f64;
    let zmax = (2.0 * nf + 1.0).sqrt() + 1.0;
    let mut step = std::f64::consts::PI / (4.0 * (2.0 * nf + 1.0).sqrt());
    let half = n / 2;
    let brackets = loop {
        let mut br = Vec::with_capacity(half);
        let mut a = step / 2.0;
        let mut fa = hermite_orthonormal(n, a).0;
        while a < zmax {
            let b = a + step;
            let fb = hermite_orthonormal(n, b).0;
            if fa.signum() != fb.signum() {
                br.push((a, b));
            }
            a = b;
            fa = fb;
        }
        if br.len() == half {
            break br;
        }
        step /= 2.0;
    };
    let mut pos = Vec::with_capacity(half);
    for (mut a, mut b) in brackets {
        let fa = hermite_orthonormal(n, a).0;
        let mut z = 0.5 * (a + b);
        for _ in 0..200 {
            let (p, pm1) = hermite_orthonormal(n, z);
            if p == 0.0 {
                break;
            }
            if p.signum() == fa.signum() {
                a = z;
            } else {
                b = z;
            }
            let dp = (2.0 * nf).sqrt() * pm1;
            let mut next = z - p / dp;
            if !(next > a && next < b) {
                next = 0.5 * (a + b);
            }
            let done = (next - z).abs() <= 4.0 * f64::EPSILON * z.abs();
            z = next;
            if done || b - a <= 4.0 * f64::EPSILON * z.abs() {
                break;
            }
        }
        pos.push(z);
    }
    let weight = |z: f64| {
        let pp = (2.0 * nf).sqrt() * hermite_orthonormal(n, z).1;
        2.0 / (pp * pp)
    };
    let mut x = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for &z in pos.iter().rev() {
        x.push(z);
        w.push(weight(z));
    }
    if n % 2 == 1 {
        x.push(0.0);
        w.push(weight(0.0));
    }
    for &z in &pos {
        x.push(-z);
        w.push(weight(z));
    }
    (x, w)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthoResult {
    pub value: f64,
    pub expected: f64,
    /// |value − expected| / scale, scale the geometric mean of the diagonal norms.
    pub error: f64,
    pub nodes: usize,
    pub pass: bool,
}

impl OrthoResult {
    pub fn to_json(&self) -> Value {
        json!({"value": self.value, "expected": self.expected, "error": self.error, "nodes": self.nodes, "pass": self.pass})
    }
}

fn quad_once(h1: &MPoly, h2: &MPoly, t: &MPoly, y: f64, n: usize) -> f64 {
    let (nodes, weights) = gauss_hermite(n);
    let s = (-4.0 * y).sqrt();
    let mut acc = 0.0;
    for (ti, wi) in nodes.iter().zip(&weights) {
        let x = s * ti;
        let v = [x, y, 0.0, 0.0];
        let d = t.eval_f64(v);
        acc += wi * h1.eval_f64(v) * h2.eval_f64(v) / (d * d);
    }
    s * acc
}

/// The same integral with a fixed number of nodes.
pub fn quad_fixed(lam: &Partition, n1: i64, n2: i64, y: f64, nodes: usize) -> Result<f64> {
    let h1 = xhermite_wronskian(lam, n1)?;
    let h2 = xhermite_wronskian(lam, n2)?;
    Ok(quad_once(&h1, &h2, &tau(lam), y, nodes))
}

/// ∫ H^λ_{n1} H^λ_{n2} e^{x²/4y} / τ² dx against ν^λ_{n−N}(y) δ.
pub fn orthogonality_quad(lam: &Partition, n1: i64, n2: i64, y: f64, tol: f64) -> Result<OrthoResult> {
    if !lam.is_even() {
        return Err(Error::NotEven);
    }
    if y >= 0.0 {
        return Err(Error::Parse(format!("y must be negative, got {y}")));
    }
    let nn = lam.weight() as i64;
    let h1 = xhermite_wronskian(lam, n1)?;
    let h2 = xhermite_wronskian(lam, n2)?;
    let t = tau(lam);
    let nu1 = norming(lam, n1 - nn)?.eval_f64(y);
    let nu2 = norming(lam, n2 - nn)?.eval_f64(y);
    let scale = (nu1 * nu2).sqrt();
    let expected = if n1 == n2 { nu1 } else { 0.0 };
    let mut n = 64;
    let mut prev = quad_once(&h1, &h2, &t, y, n);
    loop {
        let next_n = n * 2;
        let cur = quad_once(&h1, &h2, &t, y, next_n);
        let delta = (cur - prev).abs() / scale;
        n = next_n;
        prev = cur;
        if delta <= tol {
            break;
        }
        if n >= 512 {
            return Err(Error::NoConvergence { delta });
        }
    }
    let error = (prev - expected).abs() / scale;
    Ok(OrthoResult { value: prev, expected, error, nodes: n, pass: error <= tol })
}

/// At y = 0, ψ(x, z) = f(x, z) e^{xz} with f = Φ(x, 0, z) / x^N. Self-duality
/// means f(x, z) = f(z, x).
pub fn check_self_duality(lam: &Partition) -> bool {
    let n = lam.weight() as i32;
    let f = phi_lambda(lam).eval_var(Var::Y, &rat(0)).mul_monomial(&[-n, 0, 0, 0], &Rat::one());
    let swapped = MPoly::from_terms(f.terms().map(|(e, c)| ([e[2], e[1], e[0], e[3]], c.clone())));
    f == swapped
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite_core::hermite_h;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v)
    }

    #[test]
    fn classical_wave_series() {
        let ws = wave_series(&Partition::empty(), 8);
        for n in 0..=8 {
            let f = Rat::new(1.into(), factorial(n as u32));
            assert_eq!(ws.coeff(n).unwrap(), hermite_h(n as usize).scale(&f));
        }
        assert!(ws.coeff(9).is_err());
    }

    #[test]
    fn wave_series_examples() {
        let lam = p(&[2, 2]);
        let ws = wave_series(&lam, 8);
        let kn = crate::intertwiners::kappa_big_n(&lam);
        for n in [2i64, 3, 6, 7] {
            let f = kn.eval_int(n) / Rat::from_integer(factorial(n as u32));
            assert_eq!(ws.coeff(n - 4).unwrap(), xhermite_wronskian(&lam, n).unwrap().scale(&f));
        }
        let ws = wave_series(&p(&[2, 1]), 4);
        assert_eq!(ws.coeff(-2).unwrap(), MPoly::x().scale(&rat(3)));
    }

    #[test]
    fn generating_checks() {
        for lam in [Partition::empty(), p(&[1]), p(&[2, 1]), p(&[2, 2])] {
            let r = check_generating(&lam, 8).unwrap();
            assert!(r.pass, "{lam} {r:?}");
            assert!(check_annihilation(&lam, 8).unwrap().pass, "{lam}");
        }
        assert_eq!(check_annihilation(&p(&[2, 1]), 4).unwrap().indices, vec![3, 1]);
    }

    #[test]
    fn functionals() {
        let psi = vacuum_series(6);
        for k in 0..=6 {
            let v = functional_eval(&OnePointFunctional::derivative(k), &psi).unwrap();
            assert_eq!(v, RationalFn::from_poly(hermite_h(k)));
        }
        let f = &MPoly::x().pow(3) + &MPoly::int(5);
        assert_eq!(OnePointFunctional::derivative(0).eval_poly(&f, Var::X), MPoly::int(5));
        // e^{xz}: the ĉ_y transform of e^{(2)} gives x² + 2y
        let exz = LaurentSeries::from_polys(
            (0..=4)
                .map(|k| (k, MPoly::x().pow(k as u32).scale(&Rat::new(1.into(), factorial(k as u32)))))
                .collect(),
            4,
        );
        let v = OnePointFunctional::hermite_transform(2).eval_series(&exz).unwrap();
        assert_eq!(v, RationalFn::from_poly(hermite_h(2)));
        assert!(OnePointFunctional::derivative(5).eval_series(&exz).is_err());
    }

    #[test]
    fn gauss_hermite_moments() {
        let sp = std::f64::consts::PI.sqrt();
        for n in [1, 2, 7, 64, 128, 256, 512] {
            let (x, w) = gauss_hermite(n);
            assert_eq!(x.len(), n);
            assert!(x.windows(2).all(|p| p[0] > p[1]), "n={n}");
            let m0: f64 = w.iter().sum();
            let m2: f64 = x.iter().zip(&w).map(|(a, b)| a * a * b).sum();
            assert!((m0 - sp).abs() < 1e-12, "n={n} {m0}");
            if n > 1 {
                assert!((m2 - sp / 2.0).abs() < 1e-12, "n={n} {m2}");
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let sp = std::f64::consts::PI.sqrt();
        let r = orthogonality_quad(&Partition::empty(), 0, 0, -0.25, 1e-12).unwrap();
        assert!((r.value - sp).abs() < 1e-10, "{r:?}");
        let lam = p(&[2, 2]);
        let r = orthogonality_quad(&lam, 2, 2, -0.25, 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.expected - 2.0 / 3.0 * sp).abs() < 1e-12);
        let r = orthogonality_quad(&lam, 2, 3, -0.25, 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(orthogonality_quad(&p(&[2, 1]), 1, 1, -0.25, 1e-8).unwrap_err(), Error::NotEven);
    }

    #[test]
    fn self_duality() {
        for lam in comb::partitions_up_to(4) {
            assert!(check_self_duality(&lam), "{lam}");
        }
    }
}
