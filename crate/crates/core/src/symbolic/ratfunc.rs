use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Poly, Var};
use crate::error::{Error, Result};
use crate::Q;

/// Quotient of two polynomials. The denominator is never zero; after
/// normalization its constant term is 1 whenever it is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(normalize(num, den))
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: Q) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn int(c: i64) -> Self {
        RatFunc::from_poly(Poly::int(c))
    }

    pub fn var(v: Var) -> Self {
        RatFunc::from_poly(Poly::var(v))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        normalize(&self.num * p, self.den.clone())
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(normalize(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `1 / (1 - self)`.
    pub fn quasi_inverse(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), &self.den - &self.num)
    }

    /// Replaces `v` by the rational function `g`.
    pub fn substitute(&self, v: Var, g: &RatFunc) -> Result<RatFunc> {
        if !self.uses(v) {
            return Ok(self.clone());
        }
        // p(g) = sum c_k n^k d^(D-k) / d^D with D the common degree bound.
        let d = self.num.degree(v).max(self.den.degree(v));
        let (gn, gd) = (&g.num, &g.den);
        let homog = |p: &Poly| -> Poly {
            let coeffs = p.coeffs_in(v);
            let mut acc = Poly::zero();
            let mut npow = Poly::one();
            let mut dpows = vec![Poly::one()];
            for _ in 0..d {
                let next = dpows.last().unwrap() * gd;
                dpows.push(next);
            }
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&(c * &npow) * &dpows[d as usize - k]);
                }
                npow = &npow * gn;
            }
            acc
        };
        RatFunc::new(homog(&self.num), homog(&self.den))
    }

    pub fn substitute_poly(&self, v: Var, g: &Poly) -> Result<RatFunc> {
        RatFunc::new(self.num.substitute(v, g), self.den.substitute(v, g))
    }

    /// Sets `v` to a constant value.
    pub fn eval(&self, v: Var, value: &Q) -> Result<RatFunc> {
        RatFunc::new(self.num.eval(v, value), self.den.eval(v, value))
    }

    /// Numeric value when all variables are assigned.
    pub fn eval_all(&self, values: &[(Var, Q)]) -> Result<Q> {
        let d = self.den.eval_all(values);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_all(values) / d)
    }

    pub fn derivative(&self, v: Var) -> RatFunc {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return normalize(dn, self.den.clone());
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        normalize(top, &self.den * &self.den)
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn equals(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

fn normalize(mut num: Poly, mut den: Poly) -> RatFunc {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return RatFunc::zero();
    }
    let content = {
        let a = num.monomial_content();
        let b = den.monomial_content();
        let mut m = a;
        for (x, y) in m.0.iter_mut().zip(b.0.iter()) {
            *x = (*x).min(*y);
        }
        m
    };
    if !content.is_one() {
        num = num.div_monomial(&content);
        den = den.div_monomial(&content);
    }
    if !den.is_constant() {
        if let Some(g) = univariate_gcd(&num, &den) {
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
    }
    if !den.is_constant() && !num.is_constant() && den.len() <= num.len() {
        if let Some(q) = num.div_exact(&den) {
            return RatFunc {
                num: q,
                den: Poly::one(),
            };
        }
    }
    let c0 = den.constant_term();
    let lead = if c0.is_zero() {
        den.leading_coefficient()
    } else {
        c0
    };
    if !lead.is_one() {
        let inv = lead.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    RatFunc { num, den }
}

/// GCD when one side involves a single variable; `None` otherwise.
fn univariate_gcd(num: &Poly, den: &Poly) -> Option<Poly> {
    let single = |p: &Poly| -> Option<Var> {
        let vs = p.vars();
        (vs.len() == 1).then(|| vs[0])
    };
    if let Some(v) = single(den) {
        return Some(Poly::gcd_with_univariate(den, num, v));
    }
    if let Some(v) = single(num) {
        return Some(Poly::gcd_with_univariate(num, den, v));
    }
    None
}

fn add_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return normalize(&a.num + &b.num, a.den.clone());
    }
    if a.den.is_constant() && b.den.is_constant() {
        let n = &a.num.scale(&b.den.constant_term()) + &b.num.scale(&a.den.constant_term());
        return normalize(n, a.den.scale(&b.den.constant_term()));
    }
    // Share the common univariate factor of the two denominators.
    let (av, bv) = (a.den.vars(), b.den.vars());
    if av.len() <= 1 && bv.len() <= 1 {
        let v = av.first().or(bv.first()).copied().unwrap_or(Var::Z);
        if av.iter().chain(bv.iter()).all(|&x| x == v) {
            let g = Poly::gcd_univariate(&a.den, &b.den, v);
            if !g.is_constant() {
                let ar = a.den.div_exact(&g).expect("gcd divides");
                let br = b.den.div_exact(&g).expect("gcd divides");
                let n = &(&a.num * &br) + &(&b.num * &ar);
                return normalize(n, &(&ar * &br) * &g);
            }
        }
    }
    let n = &(&a.num * &b.den) + &(&b.num * &a.den);
    normalize(n, &a.den * &b.den)
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        add_impl(self, rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        add_impl(self, &(-rhs))
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den == rhs.num {
            return normalize(self.num.clone(), rhs.den.clone());
        }
        if self.num == rhs.den {
            return normalize(rhs.num.clone(), self.den.clone());
        }
        normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
