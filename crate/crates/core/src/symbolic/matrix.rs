use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub type RfMatrix = Vec<Vec<RatFunc>>;

pub fn identity(n: usize) -> RfMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RatFunc::one()
                    } else {
                        RatFunc::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &RfMatrix, b: &RfMatrix) -> RfMatrix {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![RatFunc::zero(); p]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn mat_sub(a: &RfMatrix, b: &RfMatrix) -> RfMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

fn cost(f: &RatFunc) -> usize {
    f.num().len() + f.den().len()
}

/// Solves `A X = B` by Gaussian elimination over rational functions.
pub fn solve(a: &RfMatrix, b: &RfMatrix) -> Result<RfMatrix> {
    let n = a.len();
    let mut a = a.clone();
    let mut b = b.clone();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| cost(&a[r][col]))
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip()?;
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        for x in b[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..n {
                if !a[col][j].is_zero() {
                    a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                }
            }
            for j in 0..b[r].len() {
                if !b[col][j].is_zero() {
                    b[r][j] = &b[r][j] - &(&f * &b[col][j]);
                }
            }
        }
    }
    Ok(b)
}

/// `(I - M)^{-1} B`.
pub fn quasi_inverse_solve(m: &RfMatrix, b: &RfMatrix) -> Result<RfMatrix> {
    solve(&mat_sub(&identity(m.len()), m), b)
}

pub fn inverse(a: &RfMatrix) -> Result<RfMatrix> {
    solve(a, &identity(a.len()))
}

/// Fraction-free elimination of `A x = b` for polynomial `A`. Returns
/// `(N, det A)` with `x_last = N / det A`. Leading principal minors must be
/// nonzero, which holds when `A(0) = I`.
pub fn bareiss_last(a: Vec<Vec<Poly>>, b: Vec<Poly>) -> Result<(Poly, Poly)> {
    let n = a.len();
    let mut m: Vec<Vec<Poly>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    let mut prev = Poly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            return Err(Error::SingularMatrix);
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pkk = &pivot_row[k];
        for row in rest.iter_mut() {
            let rik = row[k].clone();
            for j in k + 1..=n {
                let a = &row[j];
                let lhs = if a.is_zero() { Poly::zero() } else { pkk * a };
                let rhs = if rik.is_zero() || pivot_row[j].is_zero() {
                    Poly::zero()
                } else {
                    &rik * &pivot_row[j]
                };
                let t = &lhs - &rhs;
                row[j] = if prev.is_one() || t.is_zero() {
                    t
                } else {
                    t.div_exact(&prev)
                        .ok_or_else(|| Error::Internal("Bareiss step not exact".into()))?
                };
            }
            row[k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok((m[n - 1][n].clone(), det))
}

/// Fraction-free solve of `A X = B` for polynomial `A` and `B`. Returns
/// `(N, det A)` with `X = N / det A`; `N` holds the Cramer numerators.
/// Leading principal minors must be nonzero, which holds when `A(0) = I`.
pub fn bareiss_solve(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Result<(Vec<Vec<Poly>>, Poly)> {
    let n = a.len();
    if n == 0 {
        return Ok((Vec::new(), Poly::one()));
    }
    let cols = b.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Poly>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().chain(rhs.iter()).cloned().collect())
        .collect();
    let width = n + cols;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            return Err(Error::SingularMatrix);
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pkk = &pivot_row[k];
        for row in rest.iter_mut() {
            let rik = row[k].clone();
            for j in k + 1..width {
                let lhs = if row[j].is_zero() {
                    Poly::zero()
                } else {
                    pkk * &row[j]
                };
                let rhs = if rik.is_zero() || pivot_row[j].is_zero() {
                    Poly::zero()
                } else {
                    &rik * &pivot_row[j]
                };
                let t = &lhs - &rhs;
                row[j] = if prev.is_one() || t.is_zero() {
                    t
                } else {
                    t.div_exact(&prev)
                        .ok_or_else(|| Error::Internal("Bareiss step not exact".into()))?
                };
            }
            row[k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let mut x = vec![vec![Poly::zero(); cols]; n];
    for c in 0..cols {
        for i in (0..n).rev() {
            let mut acc = &m[i][n + c] * &det;
            for j in i + 1..n {
                if !m[i][j].is_zero() && !x[j][c].is_zero() {
                    acc = &acc - &(&m[i][j] * &x[j][c]);
                }
            }
            x[i][c] = if i == n - 1 {
                m[i][n + c].clone()
            } else {
                acc.div_exact(&m[i][i])
                    .ok_or_else(|| Error::Internal("Bareiss back-substitution not exact".into()))?
            };
        }
    }
    Ok((x, det))
}
