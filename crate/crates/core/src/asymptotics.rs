//! Dominant root of `D(z) = π_w z^{|w|} + (1 - z) C(z)`, the Poisson-like
//! tail of the clump count for rare words, and linear growth of the clump
//! count's mean and variance.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::automaton::{automaton_gf_marked, build_clump_automaton, build_x_set};
use crate::clump_gf::clump_count_gf;
use crate::error::{Error, Result};
use crate::languages::{single_word_languages, SingleWordLanguages};
use crate::model::{ReducedWordSet, TextModel, Word};
use crate::symbolic::{scalar_series, Poly, RatFunc, Var};
use crate::Q;

fn f64_of(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Dense coefficients `a_0..a_d` of a polynomial in `z` alone.
fn dense(p: &Poly) -> Vec<Q> {
    let mut c: Vec<Q> = p
        .coeffs_in(Var::Z)
        .iter()
        .map(Poly::constant_term)
        .collect();
    trim(&mut c);
    c
}

fn trim(c: &mut Vec<Q>) {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
}

fn horner(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
}

fn derivative(c: &[Q]) -> Vec<Q> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * Q::from_integer((i as i64).into()))
        .collect()
}

/// Remainder and quotient of `a / b`.
fn div_rem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    let mut quo = vec![Q::zero(); r.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().expect("nonempty") / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &f * bi;
        }
        quo[shift] = f;
        r.pop();
        trim(&mut r);
    }
    (quo, r)
}

fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn squarefree(c: &[Q]) -> Vec<Q> {
    let g = gcd(c, &derivative(c));
    div_rem(c, &g).0
}

/// Sturm sequence of a squarefree polynomial.
fn sturm(c: &[Q]) -> Vec<Vec<Q>> {
    let mut seq = vec![c.to_vec(), derivative(c)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            return seq;
        }
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        seq.push(r.into_iter().map(|x| -x).collect());
    }
}

fn sign_changes(seq: &[Vec<Q>], x: &Q) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| horner(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(lo, hi]`.
fn roots_in(seq: &[Vec<Q>], lo: &Q, hi: &Q) -> usize {
    sign_changes(seq, lo) - sign_changes(seq, hi)
}

/// The dominant root of `D` with a certified rational enclosure.
#[derive(Clone, Debug)]
pub struct DominantRoot {
    /// Coefficients of `D(z)`.
    pub d: Vec<Q>,
    /// `ρ` lies in `(lo, hi]`, the only root of `D` there, and `D` has no
    /// root in `(1, lo]`.
    pub lo: Q,
    pub hi: Q,
    /// Midpoint of the enclosure.
    pub rho_exact: Q,
    pub rho: f64,
    pub multiplicity: usize,
    /// Coefficients of `Q(z)` with `D(z) = Q(z)(1 - z/ρ)`, evaluated at the midpoint.
    pub q: Vec<Q>,
    /// `|D(ρ)|` and the synthetic-division remainder at the midpoint.
    pub residual: f64,
}

impl DominantRoot {
    pub fn width(&self) -> f64 {
        f64_of(&(&self.hi - &self.lo))
    }

    /// `Q(ρ)`.
    pub fn q_at_rho(&self) -> Q {
        horner(&self.q, &self.rho_exact)
    }
}

fn isolate(d: Vec<Q>, precision: &Q) -> Result<DominantRoot> {
    if d.len() < 2 {
        return Err(Error::NoRealRoot {
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let sf = squarefree(&d);
    let seq = sturm(&sf);
    // Cauchy bound on the roots.
    let lead = sf.last().expect("nonconstant").abs();
    let bound = Q::one()
        + sf.iter()
            .map(|a| a.abs() / &lead)
            .fold(Q::zero(), |m, x| if x > m { x } else { m });
    let mut lo = Q::one();
    let mut hi = bound.clone();
    if roots_in(&seq, &lo, &hi) == 0 {
        return Err(Error::NoRealRoot {
            lo: 1.0,
            hi: f64_of(&bound),
        });
    }
    let two = Q::from_integer(2.into());
    while &hi - &lo > *precision || roots_in(&seq, &lo, &hi) > 1 {
        let mid = (&lo + &hi) / &two;
        if roots_in(&seq, &lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut multiplicity = 1;
    let mut g = gcd(&d, &derivative(&d));
    while g.len() > 1 && roots_in(&sturm(&squarefree(&g)), &lo, &hi) > 0 {
        multiplicity += 1;
        g = gcd(&g, &derivative(&g));
    }
    let rho = (&lo + &hi) / &two;
    // Synthetic division by (1 - z/ρ): q_i = d_i + q_{i-1}/ρ.
    let mut q = Vec::with_capacity(d.len() - 1);
    let mut prev = Q::zero();
    for di in &d[..d.len() - 1] {
        prev = di + &prev / &rho;
        q.push(prev.clone());
    }
    let remainder = &d[d.len() - 1] + &prev / &rho;
    let residual = f64_of(&horner(&d, &rho).abs()).max(f64_of(&remainder.abs()));
    Ok(DominantRoot {
        d,
        rho: f64_of(&rho),
        rho_exact: rho,
        lo,
        hi,
        multiplicity,
        q,
        residual,
    })
}

fn precision_q(precision: f64) -> Result<Q> {
    if precision.is_nan() || precision <= 0.0 {
        return Err(Error::Domain("precision must be positive".into()));
    }
    Q::from_float(precision).ok_or_else(|| Error::Domain("precision must be finite".into()))
}

/// Smallest real root `ρ > 1` of `D(z)`, enclosed to width `precision`.
/// Roots are isolated with a Sturm sequence of the squarefree part, so a
/// multiple root (as for `ab`) is found and its multiplicity reported.
pub fn dominant_root(model: &TextModel, w: &Word, precision: f64) -> Result<DominantRoot> {
    let l = single_word_languages(model, w)?;
    isolate(dense(&l.d), &precision_q(precision)?)
}

/// `H_k(z) = [u^k] O(z, u) = ℛ 𝒰 (ℳ - 𝒦)^{k-1} / (1 - 𝒦)^k`; for `k = 0`
/// use [`clump_free_gf`].
pub fn poisson_tail_gf(model: &TextModel, w: &Word, k: usize) -> Result<RatFunc> {
    if k < 1 {
        return Err(Error::Domain(
            "H_k needs k >= 1; the clump-free texts are N(z)".into(),
        ));
    }
    let l = single_word_languages(model, w)?;
    tail_from(&l, k)
}

fn tail_from(l: &SingleWordLanguages, k: usize) -> Result<RatFunc> {
    let kk = RatFunc::from(l.k.clone());
    let one_minus_k = &RatFunc::one() - &kk;
    let gap = &l.m - &kk;
    let num = &(&l.r * &l.u) * &gap.pow(k as u32 - 1);
    num.div(&one_minus_k.pow(k as u32))
}

/// Texts without any clump: `[u^0] O(z, u) = 𝒩(z)`.
pub fn clump_free_gf(model: &TextModel, w: &Word) -> Result<RatFunc> {
    Ok(single_word_languages(model, w)?.n)
}

/// `[u^k] O(z, u)` by differentiating the clump-count generating function.
pub fn clump_count_coefficient(model: &TextModel, w: &Word, k: usize) -> Result<RatFunc> {
    let mut f = clump_count_gf(model, w)?;
    let mut fact = Q::one();
    for i in 1..=k {
        f = f.derivative(Var::U);
        fact *= Q::from_integer((i as i64).into());
    }
    Ok(f.eval(Var::U, &Q::zero())?.scale(&fact.recip()))
}

/// Exact probability of exactly `k` clumps next to its rare-word
/// approximations.
#[derive(Clone, Debug)]
pub struct PoissonApproximation {
    pub n: usize,
    pub k: usize,
    pub exact: Q,
    /// Leading term of the pole expansion at `ρ`:
    /// `π_w ρ^{|w|}/(P(ρ)Q(ρ)) · (1/k!) (P(ρ) n / ((1-𝒦(ρ))Q(ρ)))^k · ρ^{-n}`.
    pub leading_term: f64,
    /// `π_w ρ^{|w|}/Q(ρ) · (1/k!) (ρ P(ρ) n / ((1-𝒦(ρ))Q(ρ)))^k · ρ^{-n}`, which
    /// differs from the leading term by the factor `ρ^k P(ρ)`.
    pub display: f64,
    pub rho: f64,
    pub q_rho: f64,
    pub p_rho: f64,
    pub k_rho: f64,
    /// `n < |w|`: the exact value is 0 and the approximation is meaningless.
    pub pre_asymptotic: bool,
    /// `|w| > log n / log(1/p̄)` with `p̄` the largest letter probability.
    pub rare_word: bool,
}

impl PoissonApproximation {
    pub fn ratio(&self) -> f64 {
        f64_of(&self.exact) / self.leading_term
    }

    pub fn display_ratio(&self) -> f64 {
        f64_of(&self.exact) / self.display
    }
}

pub fn poisson_approximation(
    model: &TextModel,
    w: &Word,
    n: usize,
    k: usize,
) -> Result<PoissonApproximation> {
    let l = single_word_languages(model, w)?;
    let root = isolate(dense(&l.d), &precision_q(1e-40)?)?;
    if root.multiplicity > 1 {
        return Err(Error::Unsupported(format!(
            "dominant root of D has multiplicity {}; the simple-pole approximation does not apply",
            root.multiplicity
        )));
    }
    let gf = if k == 0 {
        l.n.clone()
    } else {
        tail_from(&l, k)?
    };
    let exact = scalar_series(&gf, n)?.swap_remove(n);

    let rho = &root.rho_exact;
    let qr = root.q_at_rho();
    let kr = horner(&dense(&l.k), rho);
    let dr = horner(&root.d, rho);
    let pr = rho - Q::one() + (Q::one() - &kr) * dr;
    let pi_rho = horner(&dense(&l.weight), rho);

    let (rho_f, q_f, p_f, k_f, pi_f) = (
        f64_of(rho),
        f64_of(&qr),
        f64_of(&pr),
        f64_of(&kr),
        f64_of(&pi_rho),
    );
    let kfact: f64 = (1..=k).map(|i| i as f64).product();
    let nf = n as f64;
    let decay = (-(nf) * rho_f.ln()).exp();
    let base = nf / ((1.0 - k_f) * q_f);
    let leading_term = pi_f / (p_f * q_f) / kfact * (p_f * base).powi(k as i32) * decay;
    let display = pi_f / q_f / kfact * (rho_f * p_f * base).powi(k as i32) * decay;
    let pmax = f64_of(&model.max_letter_prob()?);
    Ok(PoissonApproximation {
        n,
        k,
        exact,
        leading_term,
        display,
        rho: rho_f,
        q_rho: q_f,
        p_rho: p_f,
        k_rho: k_f,
        pre_asymptotic: n < w.len(),
        rare_word: (w.len() as f64) > nf.ln() / (1.0 / pmax).ln(),
    })
}

/// Linear growth of the mean and variance of the clump count.
#[derive(Clone, Debug)]
pub struct GrowthRates {
    pub n_max: usize,
    /// `E_n - E_{n-1}` at `n_max`.
    pub mean_slope: f64,
    /// `Var_n - Var_{n-1}` at `n_max`.
    pub variance_slope: f64,
    /// `(Var_n - Var_{n/2}) / (n - n/2)` at `n_max`, the quantity the
    /// coupled Monte Carlo estimates.
    pub variance_chord: f64,
    /// Largest relative deviation of the increments over the last 10% of
    /// the range from their value at `n_max`.
    pub mean_residual: f64,
    pub variance_residual: f64,
    /// `lim (E_n - E_{n-1}) = [(1-z)² E(z)]_{z=1}`, exact.
    pub exact_mean_slope: Q,
}

/// Clump-count generating function `O(z, u)` from the formal languages for
/// one word under a Bernoulli model, and from the automaton otherwise.
pub fn clump_count_gf_any(model: &TextModel, set: &ReducedWordSet) -> Result<RatFunc> {
    if set.len() == 1 && model.is_bernoulli() {
        clump_count_gf(model, set.get(0))
    } else {
        let a = build_clump_automaton(&build_x_set(set), model.alphabet())?;
        Ok(automaton_gf_marked(&a, model, &[Var::U])?.g)
    }
}

pub fn growth_rates(model: &TextModel, set: &ReducedWordSet, n_max: usize) -> Result<GrowthRates> {
    if n_max < 100 {
        return Err(Error::Domain("growth rates need n_max >= 100".into()));
    }
    let o = clump_count_gf_any(model, set)?;
    let one = Q::one();
    let d1 = o.derivative(Var::U);
    let e = d1.eval(Var::U, &one)?;
    let f2 = d1.derivative(Var::U).eval(Var::U, &one)?;
    let es = scalar_series(&e, n_max)?;
    let fs = scalar_series(&f2, n_max)?;
    let var: Vec<Q> = es.iter().zip(&fs).map(|(m, f)| f + m - m * m).collect();

    let inc = |s: &[Q], n: usize| &s[n] - &s[n - 1];
    let residual = |s: &[Q]| {
        let last = inc(s, n_max);
        let from = n_max - n_max / 10;
        (from..=n_max)
            .map(|n| f64_of(&((inc(s, n) - &last) / &last).abs()))
            .fold(0.0, f64::max)
    };
    let half = n_max / 2;
    let chord = (&var[n_max] - &var[half]) / Q::from_integer(((n_max - half) as i64).into());

    let omz = &Poly::one() - &Poly::var(Var::Z);
    let exact_mean_slope = e
        .mul_poly(&(&omz * &omz))
        .eval(Var::Z, &one)?
        .eval_all(&[])?;
    Ok(GrowthRates {
        n_max,
        mean_slope: f64_of(&inc(&es, n_max)),
        variance_slope: f64_of(&inc(&var, n_max)),
        variance_chord: f64_of(&chord),
        mean_residual: residual(&es),
        variance_residual: residual(&var),
        exact_mean_slope,
    })
}
