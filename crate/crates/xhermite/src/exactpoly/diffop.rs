use std::fmt;

use serde_json::{json, Value};

use super::mpoly::{MPoly, Var};
use super::ratfn::RationalFn;
use super::{binomial, Rat};
use crate::error::{Error, Result};

/// Linear differential operator sum_k coeffs[k] * d^k in one active variable.
/// Coefficients stand to the left of the derivatives.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    var: Var,
    coeffs: Vec<RationalFn>,
}

impl DiffOp {
    pub fn new(var: Var, mut coeffs: Vec<RationalFn>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        DiffOp::new(var, Vec::new())
    }

    pub fn identity(var: Var) -> Self {
        DiffOp::mult(var, RationalFn::one())
    }

    /// Multiplication by f.
    pub fn mult(var: Var, f: RationalFn) -> Self {
        DiffOp::new(var, vec![f])
    }

    /// d^k.
    pub fn d_pow(var: Var, k: usize) -> Self {
        let mut c = vec![RationalFn::zero(); k + 1];
        c[k] = RationalFn::one();
        DiffOp::new(var, c)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[RationalFn] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RationalFn {
        self.coeffs.get(k).cloned().unwrap_or_else(RationalFn::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the operator; 0 for the zero operator.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn apply(&self, f: &RationalFn) -> RationalFn {
        let mut acc = RationalFn::zero();
        let mut d = f.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                d = d.derivative(self.var);
            }
            if !c.is_zero() && !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    pub fn apply_poly(&self, f: &MPoly) -> RationalFn {
        self.apply(&RationalFn::from_poly(f.clone()))
    }

    pub fn compose(&self, b: &DiffOp) -> Result<DiffOp> {
        if self.var != b.var {
            return Err(Error::VariableMismatch);
        }
        if self.is_zero() || b.is_zero() {
            return Ok(DiffOp::zero(self.var));
        }
        let mut out = vec![RationalFn::zero(); self.coeffs.len() + b.coeffs.len() - 1];
        // a_i d^i (b_j d^j) = sum_r C(i,r) a_i b_j^{(r)} d^{i-r+j}
        let max_i = self.coeffs.len();
        let bders: Vec<Vec<RationalFn>> = b
            .coeffs
            .iter()
            .map(|bj| {
                let mut v = vec![bj.clone()];
                for _ in 1..max_i {
                    let next = v.last().unwrap().derivative(self.var);
                    v.push(next);
                }
                v
            })
            .collect();
        for (i, ai) in self.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bd) in bders.iter().enumerate() {
                for r in 0..=i {
                    let br = &bd[r];
                    if br.is_zero() {
                        continue;
                    }
                    let c = Rat::from_integer(binomial(i as u32, r as u32));
                    let t = (ai * br).scale(&c);
                    let slot = &mut out[i - r + j];
                    *slot = &*slot + &t;
                }
            }
        }
        Ok(DiffOp::new(self.var, out))
    }

    pub fn commutator(&self, b: &DiffOp) -> Result<DiffOp> {
        Ok(self.compose(b)?.sub(&b.compose(self)?))
    }

    pub fn add(&self, b: &DiffOp) -> DiffOp {
        assert_eq!(self.var, b.var, "operators act on different variables");
        let n = self.coeffs.len().max(b.coeffs.len());
        DiffOp::new(self.var, (0..n).map(|k| &self.coeff(k) + &b.coeff(k)).collect())
    }

    pub fn sub(&self, b: &DiffOp) -> DiffOp {
        self.add(&b.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp::new(self.var, self.coeffs.iter().map(|c| -c).collect())
    }

    /// f composed on the left: f * self.
    pub fn scale_left(&self, f: &RationalFn) -> DiffOp {
        DiffOp::new(self.var, self.coeffs.iter().map(|c| f * c).collect())
    }

    /// Compares the actions on 1, v, ..., v^n.
    pub fn agrees_on_monomials(&self, other: &DiffOp, n: usize) -> bool {
        if self.var != other.var {
            return false;
        }
        (0..=n).all(|k| {
            let m = RationalFn::from_poly(MPoly::var_pow(self.var, k as i32));
            self.apply(&m) == other.apply(&m)
        })
    }

    /// Operator equality decided on the monomial basis up to degree order+1.
    pub fn same_action(&self, other: &DiffOp) -> bool {
        let n = self.order().max(other.order()) + 1;
        self.agrees_on_monomials(other, n)
    }

    /// Replaces each coefficient by a function of it.
    pub fn map_coeffs(&self, f: impl Fn(&RationalFn) -> RationalFn) -> DiffOp {
        DiffOp::new(self.var, self.coeffs.iter().map(f).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "var": self.var.name(),
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "text": self.to_string(),
        })
    }

    /// Operator coefficients as Laurent polynomials, if every denominator is a monomial.
    pub fn laurent_coeffs(&self) -> Option<Vec<MPoly>> {
        self.coeffs.iter().map(|c| c.as_laurent()).collect()
    }

    /// The symbol sum_k coeffs[k] * s^k with s standing for the derivative,
    /// when all coefficients are Laurent polynomials.
    pub fn symbol(&self, s: Var) -> Option<MPoly> {
        let cs = self.laurent_coeffs()?;
        let mut out = MPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            out += &(c * &MPoly::var_pow(s, k as i32));
        }
        Some(out)
    }
}

/// Replaces `target` in pi by the derivative in `op_var`, derivatives to the
/// right of every coefficient.
pub fn substitute_right(pi: &MPoly, target: Var, op_var: Var) -> Result<DiffOp> {
    let parts = pi.collect(target);
    if parts.keys().next().is_some_and(|&k| k < 0) {
        return Err(Error::NotPolynomial(format!("negative power of {} in {pi}", target.name())));
    }
    let order = parts.keys().next_back().copied().unwrap_or(0) as usize;
    let mut coeffs = vec![RationalFn::zero(); order + 1];
    for (k, c) in parts {
        coeffs[k as usize] = RationalFn::from_poly(c);
    }
    Ok(DiffOp::new(op_var, coeffs))
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let d = format!("D{}", self.var.name());
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let dk = match k {
                0 => String::new(),
                1 => d.clone(),
                _ => format!("{d}^{k}"),
            };
            parts.push(match (c.is_one(), k) {
                (true, 0) => "1".to_string(),
                (true, _) => dk,
                (false, 0) => format!("({c})"),
                (false, _) => format!("({c})*{dk}"),
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[{self}]")
    }
}
