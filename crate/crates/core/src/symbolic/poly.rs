use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Q;

/// Number of distinct variables a [`Monomial`] can carry.
pub const NVARS: usize = 13;

/// Variables of the generating functions: `z` counts length, the others mark
/// statistics. `Xi(1..=8)` are the per-word occurrence markers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z,
    X,
    T,
    U,
    V,
    Xi(u8),
}

impl Var {
    pub const MAX_INDEXED: u8 = 8;

    pub fn index(self) -> usize {
        match self {
            Var::Z => 0,
            Var::X => 1,
            Var::T => 2,
            Var::U => 3,
            Var::V => 4,
            Var::Xi(i) => {
                assert!((1..=Self::MAX_INDEXED).contains(&i), "x{i} out of range");
                4 + i as usize
            }
        }
    }

    pub fn from_index(i: usize) -> Var {
        match i {
            0 => Var::Z,
            1 => Var::X,
            2 => Var::T,
            3 => Var::U,
            4 => Var::V,
            _ => Var::Xi((i - 4) as u8),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::Z => "z".into(),
            Var::X => "x".into(),
            Var::T => "t".into(),
            Var::U => "u".into(),
            Var::V => "v".into(),
            Var::Xi(i) => format!("x{i}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent vector. Ordered lexicographically with `z` most significant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn of(powers: &[(Var, u32)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in powers {
            m.0[v.index()] += u16::try_from(e).expect("exponent too large");
        }
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()] as u32
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(out)
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a - b;
        }
        Monomial(out)
    }

    fn meet(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = (*a).min(*b);
        }
        Monomial(out)
    }

    fn without(&self, v: Var) -> Monomial {
        let mut m = *self;
        m.0[v.index()] = 0;
        m
    }
}

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept sorted by decreasing monomial with no zero coefficients, so equal
/// polynomials have identical representations.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(Q::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Q::one(), &[(v, 1)])
    }

    pub fn monomial(c: Q, powers: &[(Var, u32)]) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: vec![(Monomial::of(powers), c)],
        }
    }

    fn from_map<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut terms: Vec<(Monomial, Q)> = it.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Coefficient of the monomial 1.
    pub fn constant_term(&self) -> Q {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Q)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms
            .binary_search_by(|(k, _)| m.cmp(k))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    /// Variables with a positive exponent somewhere.
    pub fn vars(&self) -> Vec<Var> {
        (0..NVARS)
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .map(Var::from_index)
            .collect()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Splits by powers of `v`: entry k is the coefficient of `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let d = self.degree(v) as usize;
        let mut parts: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            parts[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        parts.into_iter().map(Poly::from_map).collect()
    }

    /// Groups terms by their monomial in every variable except `v`; each
    /// group is a univariate polynomial in `v`.
    fn groups_except(&self, v: Var) -> BTreeMap<Monomial, Poly> {
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry(m.without(v))
                .or_default()
                .push((Monomial::of(&[(v, m.exp(v))]), c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, t)| (k, Poly::from_map(t)))
            .collect()
    }

    pub fn eval(&self, v: Var, value: &Q) -> Poly {
        let mut powers: Vec<Q> = vec![Q::one()];
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let k = c * &powers[e];
            *acc.entry(m.without(v)).or_insert_with(Q::zero) += k;
        }
        Poly::from_map(acc)
    }

    /// Numeric value when every variable is given.
    pub fn eval_all(&self, values: &[(Var, Q)]) -> Q {
        let mut p = self.clone();
        for (v, x) in values {
            p = p.eval(*v, x);
        }
        debug_assert!(p.is_constant());
        p.constant_term()
    }

    /// Float evaluation of a polynomial in one variable.
    pub fn eval_f64(&self, v: Var, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(m.exp(v) as i32))
            .sum()
    }

    /// Replaces `v` by the polynomial `g`.
    pub fn substitute(&self, v: Var, g: &Poly) -> Poly {
        let coeffs = self.coeffs_in(v);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * g) + c;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let i = v.index();
        Poly::from_map(self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut d = *m;
            d.0[i] -= 1;
            (d, c * Q::from_integer(BigInt::from(m.0[i])))
        }))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((first, _)) => it.fold(*first, |acc, (m, _)| acc.meet(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m), c.clone()))
                .collect(),
        }
    }

    /// Quotient when `d` divides `self` exactly, otherwise `None`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.len() == 1 {
            let (dm, dc) = &d.terms[0];
            if !self.terms.iter().all(|(m, _)| dm.divides(m)) {
                return None;
            }
            let inv = dc.recip();
            return Some(Poly {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| (m.div(dm), c * &inv))
                    .collect(),
            });
        }
        for i in 0..NVARS {
            let v = Var::from_index(i);
            if d.degree(v) > self.degree(v) {
                return None;
            }
        }
        let (dm, dc) = d.terms[0].clone();
        let dc_inv = dc.recip();
        let mut rem: BTreeMap<Monomial, Q> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((lm, lc)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if !dm.divides(&lm) {
                return None;
            }
            let qm = lm.div(&dm);
            let qc = &lc * &dc_inv;
            for (m, c) in &d.terms {
                let key = m.mul(&qm);
                let delta = c * &qc;
                let remove = match rem.get_mut(&key) {
                    Some(slot) => {
                        *slot -= delta;
                        slot.is_zero()
                    }
                    None => {
                        rem.insert(key, -delta);
                        false
                    }
                };
                if remove {
                    rem.remove(&key);
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly::from_map(quot))
    }

    /// Remainder of univariate division in `v` (both operands univariate).
    fn rem_univariate(&self, d: &Poly, v: Var) -> Poly {
        let dd = d.degree(v);
        let (_, dlc) = d.terms[0].clone();
        let inv = dlc.recip();
        let mut r = self.clone();
        while !r.is_zero() && r.degree(v) >= dd {
            let (lm, lc) = r.terms[0].clone();
            let shift = Monomial::of(&[(v, lm.exp(v) - dd)]);
            let t = d.mul_monomial(&shift).scale(&(&lc * &inv));
            r = &r - &t;
        }
        r
    }

    fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic GCD of two polynomials in the single variable `v`.
    pub fn gcd_univariate(a: &Poly, b: &Poly, v: Var) -> Poly {
        let (mut a, mut b) = (a.monic(), b.monic());
        if a.degree(v) < b.degree(v) {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.rem_univariate(&b, v).monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// When `self` involves only `v`, the GCD with an arbitrary `other`:
    /// the univariate GCD with every coefficient of `other` seen as a
    /// polynomial in `v` over the remaining variables.
    pub fn gcd_with_univariate(univ: &Poly, other: &Poly, v: Var) -> Poly {
        let mut g = univ.monic();
        for part in other.groups_except(v).values() {
            if g.degree(v) == 0 {
                break;
            }
            g = Poly::gcd_univariate(&g, part, v);
        }
        g
    }

    /// Only `v` occurs (constants included).
    pub fn is_univariate_in(&self, v: Var) -> bool {
        let i = v.index();
        self.terms
            .iter()
            .all(|(m, _)| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
    }

    pub fn leading_coefficient(&self) -> Q {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_monomial(m).scale(c);
        }
        if rhs.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, Q> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let k = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += k,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(k);
                    }
                }
            }
        }
        Poly::from_map(acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Q> for Poly {
    fn from(c: Q) -> Self {
        Poly::constant(c)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for i in 0..NVARS {
        let e = m.0[i];
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "{}", Var::from_index(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Terms printed from low to high degree, e.g. `1 - z + 1/4*z^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
