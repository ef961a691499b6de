use std::collections::BTreeMap;

use super::diffop::DiffOp;
use super::mpoly::{MPoly, Var};
use super::ratfn::RationalFn;
use super::rat;
use crate::error::{Error, Result};

/// Truncated Laurent series in z with coefficients rational in (x, y).
/// Coefficients are known for every exponent up to `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    coeffs: BTreeMap<i32, RationalFn>,
    order: i32,
}

impl LaurentSeries {
    pub fn zero(order: i32) -> Self {
        LaurentSeries { coeffs: BTreeMap::new(), order }
    }

    pub fn from_coeffs(coeffs: BTreeMap<i32, RationalFn>, order: i32) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(k, c)| *k <= order && !c.is_zero())
            .collect();
        LaurentSeries { coeffs, order }
    }

    pub fn from_polys(coeffs: BTreeMap<i32, MPoly>, order: i32) -> Self {
        LaurentSeries::from_coeffs(
            coeffs.into_iter().map(|(k, p)| (k, RationalFn::from_poly(p))).collect(),
            order,
        )
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn floor(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, k: i32) -> Result<RationalFn> {
        if k > self.order {
            return Err(Error::Truncation { k, order: self.order });
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(RationalFn::zero))
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, RationalFn> {
        &self.coeffs
    }

    pub fn truncate(&self, order: i32) -> LaurentSeries {
        LaurentSeries::from_coeffs(self.coeffs.clone(), order.min(self.order))
    }

    pub fn add(&self, o: &LaurentSeries) -> LaurentSeries {
        let order = self.order.min(o.order);
        let mut out = self.coeffs.clone();
        for (k, c) in &o.coeffs {
            let e = out.entry(*k).or_insert_with(RationalFn::zero);
            *e = &*e + c;
        }
        LaurentSeries::from_coeffs(out, order)
    }

    pub fn sub(&self, o: &LaurentSeries) -> LaurentSeries {
        self.add(&o.scale_rf(&RationalFn::constant(rat(-1))))
    }

    /// Multiplies by a z-free factor.
    pub fn scale_rf(&self, f: &RationalFn) -> LaurentSeries {
        LaurentSeries::from_coeffs(self.coeffs.iter().map(|(k, c)| (*k, c * f)).collect(), self.order)
    }

    /// Multiplies by z^a.
    pub fn shift(&self, a: i32) -> LaurentSeries {
        LaurentSeries::from_coeffs(
            self.coeffs.iter().map(|(k, c)| (k + a, c.clone())).collect(),
            self.order + a,
        )
    }

    /// Multiplies by a Laurent polynomial in z with (x, y)-rational coefficients,
    /// given as powers of z.
    pub fn mul_z_parts(&self, parts: &BTreeMap<i32, RationalFn>) -> LaurentSeries {
        let Some(&amin) = parts.keys().next() else {
            return LaurentSeries::zero(self.order);
        };
        let mut out = LaurentSeries::zero(self.order + amin);
        for (a, c) in parts {
            out = out.add(&self.shift(*a).scale_rf(c));
        }
        out.truncate(self.order + amin)
    }

    pub fn mul_poly(&self, p: &MPoly) -> LaurentSeries {
        let parts = p
            .collect(Var::Z)
            .into_iter()
            .map(|(a, c)| (a, RationalFn::from_poly(c)))
            .collect();
        self.mul_z_parts(&parts)
    }

    pub fn deriv_z(&self) -> LaurentSeries {
        LaurentSeries::from_coeffs(
            self.coeffs
                .iter()
                .map(|(k, c)| (k - 1, c.scale(&rat(*k as i64))))
                .collect(),
            self.order - 1,
        )
    }

    /// Termwise derivative in x or y.
    pub fn deriv(&self, v: Var) -> LaurentSeries {
        if v == Var::Z {
            return self.deriv_z();
        }
        LaurentSeries::from_coeffs(
            self.coeffs.iter().map(|(k, c)| (*k, c.derivative(v))).collect(),
            self.order,
        )
    }

    /// Applies a differential operator in x (termwise) or in z.
    pub fn apply(&self, op: &DiffOp) -> Result<LaurentSeries> {
        match op.var() {
            Var::Z => {
                let mut out: Option<LaurentSeries> = None;
                let mut d = self.clone();
                for (k, c) in op.coeffs().iter().enumerate() {
                    if k > 0 {
                        d = d.deriv_z();
                    }
                    if c.is_zero() {
                        continue;
                    }
                    let parts = split_z(c)?;
                    let t = d.mul_z_parts(&parts);
                    out = Some(match out {
                        None => t,
                        Some(o) => o.add(&t),
                    });
                }
                Ok(out.unwrap_or_else(|| LaurentSeries::zero(self.order)))
            }
            _ => {
                if op.coeffs().iter().any(|c| c.has_var(Var::Z)) {
                    return Err(Error::NotPolynomial("z in an x-operator coefficient".into()));
                }
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|(k, c)| (*k, op.apply(c)))
                    .collect();
                Ok(LaurentSeries::from_coeffs(coeffs, self.order))
            }
        }
    }

    /// Coefficientwise equality up to the smaller of the two truncation orders.
    pub fn agrees_with(&self, o: &LaurentSeries) -> bool {
        self.truncate(o.order) == o.truncate(self.order)
    }
}

/// Writes f = sum_a f_a z^a with z-free f_a; fails if the denominator has a
/// non-monomial dependence on z.
pub fn split_z(f: &RationalFn) -> Result<BTreeMap<i32, RationalFn>> {
    let den = f.den();
    let a = den.min_degree(Var::Z).unwrap_or(0);
    let mut shift = [0; 4];
    shift[Var::Z.idx()] = -a;
    let d = den.mul_monomial(&shift, &rat(1));
    if d.has_var(Var::Z) {
        return Err(Error::NotPolynomial(format!("{f} is not Laurent in z")));
    }
    Ok(f.num()
        .collect(Var::Z)
        .into_iter()
        .map(|(b, c)| (b - a, RationalFn::new(c, d.clone())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{factorial, Rat};

    /// e^{xz} to order n.
    fn exp_xz(n: i32) -> LaurentSeries {
        let mut c = BTreeMap::new();
        for k in 0..=n {
            let f = Rat::new(1.into(), factorial(k as u32));
            c.insert(k, MPoly::x().pow(k as u32).scale(&f));
        }
        LaurentSeries::from_polys(c, n)
    }

    #[test]
    fn dx_on_exponential_is_multiplication_by_z() {
        let s = exp_xz(10);
        let d = s.apply(&DiffOp::d_pow(Var::X, 1)).unwrap();
        let zs = s.shift(1);
        assert!(d.agrees_with(&zs));
        assert_eq!(zs.order(), 11);
    }

    #[test]
    fn truncation_is_reported() {
        let s = exp_xz(3);
        assert!(s.coeff(3).is_ok());
        assert_eq!(s.coeff(4), Err(Error::Truncation { k: 4, order: 3 }));
        assert_eq!(s.deriv_z().order(), 2);
    }

    #[test]
    fn laurent_multiplier_lowers_order() {
        let s = exp_xz(6);
        let p = MPoly::var_pow(Var::Z, -2) + MPoly::x();
        let t = s.mul_poly(&p);
        assert_eq!(t.order(), 4);
        assert_eq!(t.floor(), Some(-2));
    }
}
