//! Exceptional operators T, T̃ and the lowering operators L_q.

use crate::combinatorics::{self as comb, Partition};
use crate::error::{Error, Result};
use crate::exactpoly::{binomial, rat, wronskian_cofactors, DiffOp, MPoly, RationalFn, Rat, UniPoly, Var};
use crate::hermite_core::{rational_r, tau, xhermite_wronskian};
use crate::intertwiners::k_star;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gauge {
    /// T, acting on H^λ_n.
    Raw,
    /// T̃ = τ^{-1} T τ, acting on R_m.
    Tilde,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalOperator {
    pub lambda: Partition,
    pub gauge: Gauge,
    pub op: DiffOp,
}

/// 2y∂² + x∂, the classical operator.
pub fn t_classical() -> DiffOp {
    let c = |p: MPoly| RationalFn::from_poly(p);
    DiffOp::new(Var::X, vec![RationalFn::zero(), c(MPoly::x()), c(MPoly::y().scale(&rat(2)))])
}

/// (log τ)_xx = (τ τ_xx − τ_x²)/τ².
pub fn log_tau_xx(lam: &Partition) -> RationalFn {
    let t = tau(lam);
    let tx = t.derivative(Var::X);
    let txx = tx.derivative(Var::X);
    RationalFn::new(&(&t * &txx) - &(&tx * &tx), &t * &t)
}

pub fn t_exceptional(lam: &Partition, gauge: Gauge) -> ExceptionalOperator {
    let t = tau(lam);
    let tx = t.derivative(Var::X);
    let txx = tx.derivative(Var::X);
    let y = MPoly::y();
    let two_y = RationalFn::from_poly(y.scale(&rat(2)));
    let op = match gauge {
        Gauge::Raw => {
            let c0 = RationalFn::new(&(&y * &txx).scale(&rat(2)) - &(&MPoly::x() * &tx), t.clone());
            let c1 = RationalFn::new(&(&MPoly::x() * &t) - &(&y * &tx).scale(&rat(4)), t.clone());
            DiffOp::new(Var::X, vec![c0, c1, two_y])
        }
        Gauge::Tilde => {
            let c0 = log_tau_xx(lam).mul_poly(&y.scale(&rat(4)));
            DiffOp::new(Var::X, vec![c0, RationalFn::from_poly(MPoly::x()), two_y])
        }
    };
    ExceptionalOperator { lambda: lam.clone(), gauge, op }
}

/// T̃ R_m = m R_m.
pub fn check_eigen(lam: &Partition, m: i64) -> Result<bool> {
    let r = rational_r(lam, m)?;
    Ok(t_exceptional(lam, Gauge::Tilde).op.apply(&r) == r.scale(&rat(m)))
}

/// T H^λ_n = (n − N) H^λ_n.
pub fn check_eigen_raw(lam: &Partition, n: i64) -> Result<bool> {
    let h = xhermite_wronskian(lam, n)?;
    let ev = rat(n - lam.weight() as i64);
    Ok(t_exceptional(lam, Gauge::Raw).op.apply_poly(&h) == RationalFn::from_poly(h.scale(&ev)))
}

/// τ^{-1} ∘ T ∘ τ reproduces T̃.
pub fn check_gauge(lam: &Partition) -> Result<bool> {
    let t = RationalFn::from_poly(tau(lam));
    let raw = t_exceptional(lam, Gauge::Raw).op;
    let conj = DiffOp::mult(Var::X, t.recip()).compose(&raw)?.compose(&DiffOp::mult(Var::X, t))?;
    Ok(conj == t_exceptional(lam, Gauge::Tilde).op)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoweringOperator {
    pub lambda: Partition,
    pub q: i64,
    pub op: DiffOp,
    pub gamma: UniPoly,
    /// G_q, the indices of the kernel R_k.
    pub kernel: Vec<i64>,
}

/// L_q f = Wr[R_{k_1}, ..., R_{k_q}, f] / Wr[R_{k_1}, ..., R_{k_q}] over k ∈ G_q.
///
/// With R_k = P_k/τ this equals Wr[P, τf]/(τ Wr[P]), so only polynomial minors
/// are needed.
pub fn lowering_op(lam: &Partition, q: i64) -> Result<LoweringOperator> {
    if q <= 0 || !comb::is_q_core(lam, q) {
        return Err(Error::NotCore { q });
    }
    let (kernel, gamma) = comb::gamma_poly(lam, q);
    let n = lam.weight() as i64;
    let ps: Vec<MPoly> = kernel.iter().map(|&k| xhermite_wronskian(lam, k + n)).collect::<Result<_>>()?;
    let cof = wronskian_cofactors(&ps, Var::X);
    let t = tau(lam);
    let mut tder = vec![t.clone()];
    for _ in 1..cof.len() {
        let d = tder.last().unwrap().derivative(Var::X);
        tder.push(d);
    }
    let den = &t * cof.last().unwrap();
    let coeffs = (0..cof.len())
        .map(|r| {
            let mut num = MPoly::zero();
            for (j, c) in cof.iter().enumerate().skip(r) {
                let b = Rat::from_integer(binomial(j as u32, r as u32));
                num += &(c * &tder[j - r]).scale(&b);
            }
            RationalFn::new(num, den.clone())
        })
        .collect();
    Ok(LoweringOperator { lambda: lam.clone(), q, op: DiffOp::new(Var::X, coeffs), gamma, kernel })
}

/// Outcome of L_q R_m = γ_q(m) R_{m−q}; `residual` is lhs − rhs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoweringCheck {
    pub holds: bool,
    pub gamma_value: Rat,
    pub residual: RationalFn,
}

pub fn check_lowering(low: &LoweringOperator, m: i64) -> Result<LoweringCheck> {
    let lam = &low.lambda;
    let lhs = low.op.apply(&rational_r(lam, m)?);
    let g = low.gamma.eval_int(m);
    let rhs = if comb::in_j(lam, m - low.q) {
        rational_r(lam, m - low.q)?.scale(&g)
    } else {
        RationalFn::zero()
    };
    let residual = &lhs - &rhs;
    let gamma_ok = comb::in_j(lam, m - low.q) || g == rat(0);
    Ok(LoweringCheck { holds: residual.is_zero() && gamma_ok, gamma_value: g, residual })
}

/// K* ∘ ∂^q = L_q ∘ K*, decided on the monomial basis.
pub fn check_intertwine(low: &LoweringOperator) -> Result<bool> {
    let ks = k_star(&low.lambda);
    let lhs = ks.compose(&DiffOp::d_pow(Var::X, low.q as usize))?;
    let rhs = low.op.compose(&ks)?;
    Ok(lhs.same_action(&rhs))
}

/// [T, K*] = −(4y (log τ)_xx + ℓ) K* with T = 2y∂² + x∂.
///
/// The shift by ℓ comes from [x∂, ∂^ℓ] = −ℓ∂^ℓ; it is what makes
/// T̃ ∘ K* = K* ∘ (T − ℓ), matching T H_{m+ℓ} = (m+ℓ) H_{m+ℓ} and T̃ R_m = m R_m.
#[allow(non_snake_case)]
pub fn check_T_commutator(lam: &Partition) -> Result<bool> {
    let ks = k_star(lam);
    let lhs = t_classical().commutator(&ks)?;
    let f = &log_tau_xx(lam).mul_poly(&MPoly::y().scale(&rat(4))) + &RationalFn::constant(rat(lam.len() as i64));
    Ok(lhs.same_action(&ks.scale_left(&-f)))
}

/// [T, K*] + 4y (log τ)_xx K*, which equals −ℓ K*.
#[allow(non_snake_case)]
pub fn T_commutator_defect(lam: &Partition) -> Result<DiffOp> {
    let ks = k_star(lam);
    let f = log_tau_xx(lam).mul_poly(&MPoly::y().scale(&rat(4)));
    Ok(t_classical().commutator(&ks)?.add(&ks.scale_left(&f)))
}
