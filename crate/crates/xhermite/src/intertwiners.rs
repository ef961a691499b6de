//! The intertwiner K*, the umbral map, the dual intertwiner and the
//! expansion of exceptional Hermite polynomials in classical ones.

use num_traits::Zero;

use crate::combinatorics::{self as comb, Partition};
use crate::error::{Error, Result};
use crate::exactpoly::{
    factorial, rat, substitute_right, wronskian_cofactors, DiffOp, MPoly, RationalFn, Rat, UniPoly, Var,
};
use crate::hermite_core::{hermite_at, hermite_h, phi_lambda, tau};

/// Cofactors C_j with Wr[H_{k_ℓ}, ..., H_{k_1}, f] = Σ_j C_j f^{(j)}.
pub fn k_star_cofactors(lam: &Partition) -> Vec<MPoly> {
    let hs: Vec<MPoly> = comb::k_set(lam).iter().rev().map(|&k| hermite_h(k as usize)).collect();
    wronskian_cofactors(&hs, Var::X)
}

/// K* f = Wr[H_{k_ℓ}, ..., H_{k_1}, f] / Wr[H_{k_ℓ}, ..., H_{k_1}].
pub fn k_star(lam: &Partition) -> DiffOp {
    let cof = k_star_cofactors(lam);
    let w = cof.last().expect("at least one cofactor").clone();
    DiffOp::new(Var::X, cof.into_iter().map(|c| RationalFn::new(c, w.clone())).collect())
}

/// The same operator read off from z^ℓ Φ / τ with z standing for ∂_x.
pub fn k_star_from_phi(lam: &Partition) -> Result<DiffOp> {
    let l = lam.len() as i32;
    let sym = &phi_lambda(lam) * &MPoly::var_pow(Var::Z, l);
    let op = substitute_right(&sym, Var::Z, Var::X)?;
    let inv = RationalFn::new(MPoly::one(), tau(lam));
    Ok(op.scale_left(&inv))
}

/// 𝐇(s, z): x^i ↦ H_i(x + 2sz, s), linear over the remaining variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UmbralMap {
    pub shift: MPoly,
}

impl UmbralMap {
    pub fn new(shift: MPoly) -> Self {
        UmbralMap { shift }
    }

    /// 𝐇(y, z).
    pub fn plus_y() -> Self {
        UmbralMap::new(MPoly::y())
    }

    /// 𝐇(−y, z).
    pub fn minus_y() -> Self {
        UmbralMap::new(-MPoly::y())
    }

    pub fn apply(&self, pi: &MPoly) -> Result<MPoly> {
        umbral_apply(&self.shift, pi)
    }
}

pub fn umbral_apply(s: &MPoly, pi: &MPoly) -> Result<MPoly> {
    let parts = pi.collect(Var::X);
    if parts.keys().next().is_some_and(|&i| i < 0) {
        return Err(Error::NotPolynomial(format!("negative power of x in {pi}")));
    }
    let arg = &MPoly::x() + &(s * &MPoly::z()).scale(&rat(2));
    let mut out = MPoly::zero();
    for (i, c) in parts {
        out += &(&c * &hermite_at(i as usize, &arg, s));
    }
    Ok(out)
}

/// Symbol K(x, y, z) = 𝐇(−y, z) Φ.
pub fn k_dual(lam: &Partition) -> MPoly {
    umbral_apply(&-MPoly::y(), &phi_lambda(lam)).expect("Φ is polynomial in x")
}

/// K(∂_z, y, z), derivatives to the right.
pub fn k_dual_op(lam: &Partition) -> DiffOp {
    substitute_right(&k_dual(lam), Var::X, Var::Z).expect("K is polynomial in x")
}

/// K♮(n, y) = Σ_j K♮_j(n) y^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KNatural {
    pub coeffs: Vec<UniPoly>,
}

impl KNatural {
    /// As a polynomial in (n, y), n in the m slot.
    pub fn to_mpoly(&self) -> MPoly {
        let mut out = MPoly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            out += &(&c.to_mpoly(Var::M) * &MPoly::y().pow(j as u32));
        }
        out
    }
}

/// K♮_j(n) = Σ_i K_ij F_{i+2j}(n), with K_ij the coefficient of x^i y^j z^{i+2j−N} in K.
pub fn k_natural(lam: &Partition) -> KNatural {
    let n = lam.weight();
    let mut coeffs = vec![UniPoly::zero(); n + 1];
    for (e, c) in k_dual(lam).terms() {
        let (i, j) = (e[0], e[1]);
        debug_assert_eq!(e[2], i + 2 * j - n as i32, "K is weighted homogeneous");
        let f = UniPoly::falling((i + 2 * j) as u32).scale(c);
        coeffs[j as usize] = &coeffs[j as usize] + &f;
    }
    KNatural { coeffs }
}

/// κ_N(n) = Π_{k ∈ 𝒦_N}(n − k).
pub fn kappa_big_n(lam: &Partition) -> UniPoly {
    comb::kappa_l_poly(lam, lam.weight()).expect("N ≥ ℓ")
}

/// υ_j(n) = K♮_j(n) / κ_N(n).
pub fn upsilon(lam: &Partition) -> Result<Vec<UniPoly>> {
    let kap = kappa_big_n(lam);
    k_natural(lam)
        .coeffs
        .iter()
        .map(|c| {
            let (q, r) = c.divrem(&kap);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::InexactDivision)
            }
        })
        .collect()
}

/// H^λ_n = Σ_j υ_j(n) y^j H_{n−2j}.
pub fn xhermite_lincomb(lam: &Partition, n: i64) -> Result<MPoly> {
    lincomb_with(&upsilon(lam)?, lam, n)
}

pub fn lincomb_with(ups: &[UniPoly], lam: &Partition, n: i64) -> Result<MPoly> {
    if !comb::in_j(lam, n - lam.weight() as i64) {
        return Err(Error::ExceptionalDegree { n });
    }
    let mut out = MPoly::zero();
    for (j, u) in ups.iter().enumerate() {
        let c = u.eval_int(n);
        if c.is_zero() {
            continue;
        }
        let idx = n - 2 * j as i64;
        if idx < 0 {
            return Err(Error::NotPolynomial(format!("υ_{j}({n}) = {c} on a negative index")));
        }
        out += &(&hermite_h(idx as usize) * &MPoly::y().pow(j as u32)).scale(&c);
    }
    Ok(out)
}

/// Ψ₀ = Σ_{n ≤ order} H_n z^n / n!.
pub fn vacuum_series(order: i32) -> crate::exactpoly::LaurentSeries {
    let coeffs = (0..=order.max(0))
        .map(|n| {
            let f = Rat::new(1.into(), factorial(n as u32));
            (n, hermite_h(n as usize).scale(&f))
        })
        .collect();
    crate::exactpoly::LaurentSeries::from_polys(coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite_core::{rational_r, xhermite_insertion, xhermite_wronskian};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v)
    }

    fn zp(k: i32) -> MPoly {
        MPoly::var_pow(Var::Z, k)
    }

    #[test]
    fn k_star_examples() {
        assert_eq!(k_star(&Partition::empty()), DiffOp::identity(Var::X));
        let xi = |k: i32| RationalFn::from_poly(MPoly::var_pow(Var::X, k));
        let want = DiffOp::new(Var::X, vec![xi(-2).scale(&rat(3)), xi(-1).scale(&rat(-3)), RationalFn::one()]);
        assert_eq!(k_star(&p(&[2, 1])), want);
    }

    #[test]
    fn k_star_matches_phi_symbol() {
        for lam in comb::partitions_up_to(5) {
            assert_eq!(k_star(&lam), k_star_from_phi(&lam).unwrap(), "{lam}");
        }
    }

    #[test]
    fn k_star_kernel_and_image() {
        for lam in comb::partitions_up_to(5) {
            let ks = k_star(&lam);
            for k in comb::k_set(&lam) {
                assert!(ks.apply_poly(&hermite_h(k as usize)).is_zero(), "{lam} {k}");
            }
            let l = lam.len() as i64;
            let kap = comb::kappa_poly(&lam);
            for m in comb::j_smallest(&lam, 4) {
                let lhs = ks.apply_poly(&hermite_h((m + l) as usize));
                let rhs = rational_r(&lam, m).unwrap().scale(&kap.eval_int(m));
                assert_eq!(lhs, rhs, "{lam} m={m}");
            }
        }
    }

    #[test]
    fn umbral_examples() {
        let xz = &MPoly::x() * &MPoly::z();
        let want = &(&MPoly::y() * &zp(2)).scale(&rat(2)) + &xz;
        assert_eq!(umbral_apply(&MPoly::y(), &xz).unwrap(), want);
        assert_eq!(UmbralMap::plus_y().apply(&MPoly::one()).unwrap(), MPoly::one());
        let pi = MPoly::x().pow(4) + &MPoly::x() * &zp(-3);
        let there = UmbralMap::plus_y().apply(&pi).unwrap();
        assert_eq!(UmbralMap::minus_y().apply(&there).unwrap(), pi);
    }

    #[test]
    fn k_dual_examples() {
        let x = MPoly::x();
        let y = MPoly::y();
        let yz = |a: i32, b: i32, c: i64| (&y.pow(a as u32) * &zp(b)).scale(&rat(c));
        let want = x.pow(3) - &(yz(1, 1, 6) + zp(-1).scale(&rat(3))) * &x.pow(2)
            + &(yz(2, 2, 12) + y.scale(&rat(6)) + zp(-2).scale(&rat(3))) * &x
            - yz(3, 3, 8);
        assert_eq!(k_dual(&p(&[2, 1])), want);
        assert_eq!(k_dual(&Partition::empty()), MPoly::one());

        let op = k_dual_op(&p(&[2, 2]));
        let c = |q: MPoly| RationalFn::from_poly(q);
        let want = vec![
            c(yz(4, 4, 16) - yz(3, 2, 16) - yz(1, -2, 24)),
            c(yz(3, 3, -32)),
            c(yz(2, 2, 24) + y.scale(&rat(12)) + zp(-2).scale(&rat(6))),
            c(-(yz(1, 1, 8) + zp(-1).scale(&rat(4)))),
            RationalFn::one(),
        ];
        assert_eq!(op, DiffOp::new(Var::Z, want));
    }

    #[test]
    fn upsilon_examples() {
        let n = UniPoly::ident();
        let c = |v: i64| UniPoly::constant(rat(v));
        let f = |a: i64| &n - &c(a);
        let ups = upsilon(&p(&[2, 2])).unwrap();
        let want = vec![
            c(1),
            &c(-4) * &(&n.scale(&rat(2)) - &c(3)),
            &c(24) * &(&f(2) * &f(3)),
            &(&c(-16) * &(&f(2) * &f(3))) * &(&n.scale(&rat(2)) - &c(11)),
            &c(16) * &(&(&f(2) * &f(3)) * &(&f(6) * &f(7))),
        ];
        assert_eq!(ups, want);
        assert_eq!(kappa_big_n(&p(&[2, 2])), UniPoly::from_roots([0, 1, 4, 5]));
        assert_eq!(k_natural(&p(&[2, 2])).coeffs[0], UniPoly::from_roots([0, 1, 4, 5]));

        let ups = upsilon(&p(&[2, 1])).unwrap();
        let want = vec![
            c(1),
            &c(-6) * &f(1),
            &c(12) * &(&f(1) * &f(3)),
            &c(-8) * &(&f(1) * &(&f(3) * &f(5))),
        ];
        assert_eq!(ups, want);
        assert_eq!(upsilon(&Partition::empty()).unwrap(), vec![c(1)]);
    }

    #[test]
    fn lincomb_agrees_with_wronskian() {
        for lam in comb::partitions_up_to(5) {
            let ups = upsilon(&lam).unwrap();
            for n in comb::i_smallest(&lam, 6) {
                let a = lincomb_with(&ups, &lam, n).unwrap();
                assert_eq!(a, xhermite_wronskian(&lam, n).unwrap(), "{lam} n={n}");
                assert_eq!(a, xhermite_insertion(&lam, n).unwrap(), "{lam} n={n}");
            }
        }
        assert!(xhermite_lincomb(&p(&[2, 1]), 2).is_err());
    }
}
