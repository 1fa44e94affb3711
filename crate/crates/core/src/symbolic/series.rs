use num_traits::Zero;

use super::poly::{Monomial, Poly, Var};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::Q;

/// Coefficients of `z^0..z^N` of a rational function, each a polynomial in
/// the remaining variables.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTable {
    pub var: Var,
    pub coeffs: Vec<Poly>,
    /// Set when marking degrees above a cap were dropped during extraction.
    pub truncated: bool,
}

impl SeriesTable {
    pub fn horizon(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    /// The constant coefficient of `z^n`; meaningful when no marks remain.
    pub fn scalar(&self, n: usize) -> Q {
        self.coeffs[n].constant_term()
    }

    pub fn scalars(&self) -> Vec<Q> {
        (0..self.coeffs.len()).map(|n| self.scalar(n)).collect()
    }

    /// Coefficients of `mark^0, mark^1, ...` in `[z^n]`, with every other
    /// variable set to 1.
    pub fn distribution(&self, n: usize, mark: Var) -> Vec<Q> {
        let p = &self.coeffs[n];
        let mut out = vec![Q::zero(); p.degree(mark) as usize + 1];
        for (m, c) in p.terms() {
            out[m.exp(mark) as usize] += c;
        }
        while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    pub fn eval(&self, v: Var, value: &Q) -> SeriesTable {
        SeriesTable {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.eval(v, value)).collect(),
            truncated: self.truncated,
        }
    }
}

/// Taylor coefficients of `f` in `z` up to `z^horizon`.
pub fn series_coefficients(f: &RatFunc, horizon: usize) -> Result<SeriesTable> {
    series_impl(f, horizon, &[])
}

/// As [`series_coefficients`], dropping terms whose degree in a capped
/// variable exceeds the cap. Exact for every retained coefficient.
pub fn series_coefficients_truncated(
    f: &RatFunc,
    horizon: usize,
    caps: &[(Var, u32)],
) -> Result<SeriesTable> {
    series_impl(f, horizon, caps)
}

fn truncate(p: Poly, caps: &[(Var, u32)]) -> (Poly, bool) {
    if caps.is_empty() || caps.iter().all(|&(v, c)| p.degree(v) <= c) {
        return (p, false);
    }
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        if caps.iter().all(|&(v, cap)| m.exp(v) <= cap) {
            out = &out + &Poly::monomial_raw(*m, c.clone());
        }
    }
    (out, true)
}

fn series_impl(f: &RatFunc, horizon: usize, caps: &[(Var, u32)]) -> Result<SeriesTable> {
    let z = Var::Z;
    let num = f.num().coeffs_in(z);
    let den = f.den().coeffs_in(z);
    let d0 = &den[0];
    if d0.is_zero() || !d0.is_constant() {
        return Err(Error::SingularAtZero);
    }
    let inv = d0.constant_term().recip();
    let mut truncated = false;
    let mut coeffs: Vec<Poly> = Vec::with_capacity(horizon + 1);
    for n in 0..=horizon {
        let mut acc = num.get(n).cloned().unwrap_or_default();
        for k in 1..den.len().min(n + 1) {
            if !den[k].is_zero() && !coeffs[n - k].is_zero() {
                acc = &acc - &(&den[k] * &coeffs[n - k]);
            }
        }
        let (c, cut) = truncate(acc.scale(&inv), caps);
        truncated |= cut;
        coeffs.push(c);
    }
    Ok(SeriesTable {
        var: z,
        coeffs,
        truncated,
    })
}

/// Scalar series of a rational function in `z` alone, using rationals only.
pub fn scalar_series(f: &RatFunc, horizon: usize) -> Result<Vec<Q>> {
    let mut vars = f.vars();
    vars.retain(|&v| v != Var::Z);
    if !vars.is_empty() {
        return Err(Error::Internal(format!(
            "scalar series of a function in {vars:?}"
        )));
    }
    let num: Vec<Q> = f
        .num()
        .coeffs_in(Var::Z)
        .iter()
        .map(|p| p.constant_term())
        .collect();
    let den: Vec<Q> = f
        .den()
        .coeffs_in(Var::Z)
        .iter()
        .map(|p| p.constant_term())
        .collect();
    if den[0].is_zero() {
        return Err(Error::SingularAtZero);
    }
    let inv = den[0].recip();
    let mut out: Vec<Q> = Vec::with_capacity(horizon + 1);
    for n in 0..=horizon {
        let mut acc = num.get(n).cloned().unwrap_or_else(Q::zero);
        for k in 1..den.len().min(n + 1) {
            if !den[k].is_zero() {
                acc -= &den[k] * &out[n - k];
            }
        }
        out.push(acc * &inv);
    }
    Ok(out)
}

impl Poly {
    pub(crate) fn monomial_raw(m: Monomial, c: Q) -> Poly {
        let mut powers = Vec::new();
        for i in 0..super::poly::NVARS {
            if m.0[i] > 0 {
                powers.push((Var::from_index(i), m.0[i] as u32));
            }
        }
        Poly::monomial(c, &powers)
    }
}
