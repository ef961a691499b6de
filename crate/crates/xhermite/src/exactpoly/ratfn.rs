use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::gcd::gcd;
use super::mpoly::{neg_exps, MPoly, Var};
use super::Rat;

/// Reduced quotient num/den.
///
/// Canonical form: both parts have non-negative exponents, den has lex-leading
/// coefficient 1 and gcd(num, den) = 1. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: MPoly,
    den: MPoly,
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        RationalFn::from_poly(MPoly::one())
    }

    pub fn constant(c: Rat) -> Self {
        RationalFn::from_poly(MPoly::constant(c))
    }

    /// Accepts Laurent polynomials; negative exponents move to the denominator.
    pub fn from_poly(p: MPoly) -> Self {
        RationalFn::new(p, MPoly::one())
    }

    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFn::zero();
        }
        let (num, den) = clear_negative(num, den);
        let g = if den.is_one() { MPoly::one() } else { gcd(&num, &den) };
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        RationalFn::normalized(num, den)
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero den");
        if lc.is_one() {
            RationalFn { num, den }
        } else {
            let inv = lc.recip();
            RationalFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The Laurent polynomial num/den when den is a monomial.
    pub fn as_laurent(&self) -> Option<MPoly> {
        if !self.den.is_monomial() {
            return None;
        }
        let (e, c) = self.den.leading()?;
        Some(self.num.mul_monomial(&neg_exps(e), &c.recip()))
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.num.has_var(v) || self.den.has_var(v)
    }

    pub fn recip(&self) -> RationalFn {
        assert!(!self.is_zero(), "reciprocal of zero");
        RationalFn::normalized(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> RationalFn {
        if c.is_zero() {
            return RationalFn::zero();
        }
        RationalFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MPoly) -> RationalFn {
        RationalFn::new(&self.num * p, self.den.clone())
    }

    pub fn pow(&self, n: u32) -> RationalFn {
        RationalFn { num: self.num.pow(n), den: self.den.pow(n) }
    }

    pub fn derivative(&self, v: Var) -> RationalFn {
        if !self.has_var(v) {
            return RationalFn::zero();
        }
        if self.den.is_one() {
            return RationalFn::from_poly(self.num.derivative(v));
        }
        let n = &self.num.derivative(v) * &self.den - &self.num * &self.den.derivative(v);
        RationalFn::new(n, &self.den * &self.den)
    }

    pub fn nth_derivative(&self, v: Var, n: usize) -> RationalFn {
        (0..n).fold(self.clone(), |f, _| f.derivative(v))
    }

    pub fn eval_var(&self, v: Var, val: &Rat) -> RationalFn {
        RationalFn::new(self.num.eval_var(v, val), self.den.eval_var(v, val))
    }

    pub fn substitute(&self, v: Var, img: &MPoly) -> RationalFn {
        RationalFn::new(self.num.substitute(v, img), self.den.substitute(v, img))
    }

    pub fn eval(&self, vals: &[Rat; 4]) -> Option<Rat> {
        let d = self.den.eval(vals);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(vals) / d)
        }
    }

    pub fn eval_f64(&self, vals: [f64; 4]) -> f64 {
        self.num.eval_f64(vals) / self.den.eval_f64(vals)
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json(), "text": self.to_string()})
    }
}

fn clear_negative(num: MPoly, den: MPoly) -> (MPoly, MPoly) {
    let mn = num.min_exps();
    let md = den.min_exps();
    let mut shift = [0; 4];
    let mut any = false;
    for i in 0..4 {
        // bring both parts to non-negative exponents, and strip common powers
        let s = -mn[i].min(md[i]);
        shift[i] = s;
        any |= s != 0;
    }
    if !any {
        return (num, den);
    }
    let one = Rat::one();
    (num.mul_monomial(&shift, &one), den.mul_monomial(&shift, &one))
}

impl From<MPoly> for RationalFn {
    fn from(p: MPoly) -> Self {
        RationalFn::from_poly(p)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.as_laurent() {
            return write!(f, "{l}");
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

impl<'a> Add<&'a RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, o: &'a RationalFn) -> RationalFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RationalFn { num: &self.num + &o.num, den: MPoly::one() };
            }
            return RationalFn::new(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RationalFn::normalized(&self.num * &o.den + &o.num, o.den.clone());
        }
        if o.den.is_one() {
            return RationalFn::normalized(&o.num * &self.den + &self.num, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        let num = &self.num * &b + &o.num * &a;
        RationalFn::new(num, &a * &o.den)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Sub<&'a RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, o: &'a RationalFn) -> RationalFn {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, o: &'a RationalFn) -> RationalFn {
        if self.is_zero() || o.is_zero() {
            return RationalFn::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFn { num: &self.num * &o.num, den: MPoly::one() };
        }
        // cross-cancel before multiplying
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFn::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn div(self, o: &'a RationalFn) -> RationalFn {
        self * &o.recip()
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, o: RationalFn) -> RationalFn {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, o: &'a RationalFn) -> RationalFn {
                (&self).$m(o)
            }
        }
        impl $tr<RationalFn> for &RationalFn {
            type Output = RationalFn;
            fn $m(self, o: RationalFn) -> RationalFn {
                self.$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl Zero for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factor() {
        let x = MPoly::x();
        let y = MPoly::y();
        let f = RationalFn::new(&x.pow(2) - &y.pow(2), &x - &y);
        assert_eq!(f, RationalFn::from_poly(&x + &y));
    }

    #[test]
    fn laurent_round_trip() {
        let p = MPoly::var_pow(Var::X, -2);
        let f = RationalFn::from_poly(p.clone());
        assert_eq!(f.den(), &MPoly::x().pow(2));
        assert_eq!(f.as_laurent(), Some(p));
        assert_eq!(f.to_string(), "x^(-2)");
    }

    #[test]
    fn quotient_rule() {
        let x = MPoly::x();
        let f = RationalFn::new(MPoly::one(), x.clone());
        assert_eq!(f.derivative(Var::X), RationalFn::from_poly(-MPoly::var_pow(Var::X, -2)));
    }

    #[test]
    fn field_ops() {
        let x = MPoly::x();
        let y = MPoly::y();
        let a = RationalFn::new(MPoly::one(), &x + &y);
        let b = RationalFn::new(MPoly::one(), &x - &y);
        let s = &a + &b;
        assert_eq!(s, RationalFn::new(MPoly::int(2) * &x, &x.pow(2) - &y.pow(2)));
        assert_eq!(&(&s * &a) / &a, s);
        assert!((&s - &s).is_zero());
    }
}
