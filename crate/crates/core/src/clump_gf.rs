//! Clump generating functions. Throughout, `z` marks text length, `x` (or
//! `x1..xr` for word sets) marks occurrences, `t` marks positions covered by
//! clumps, `u` marks clumps and `v` marks k-clumps.

use num_traits::{One, Zero};

use crate::correlation::{minimal_extension_matrix, weighted_polynomial};
use crate::error::{Error, Result};
use crate::languages::{
    multi_word_languages, single_word_languages, word_marker, SingleWordLanguages,
};
use crate::model::{ReducedWordSet, TextModel, Word};
use crate::symbolic::{scalar_series, Poly, RatFunc, RfMatrix, Var};
use crate::Q;

fn zt() -> Poly {
    &Poly::var(Var::Z) * &Poly::var(Var::T)
}

/// Generating function of a single clump: `x` per occurrence, `t` per
/// covered position.
#[derive(Clone, Debug)]
pub struct ClumpKernel {
    pub word: Word,
    pub kernel: RatFunc,
}

fn kernel_from(l: &SingleWordLanguages) -> Result<RatFunc> {
    let x = Poly::var(Var::X);
    let w = l.weight.substitute(Var::Z, &zt());
    let k = l.k.substitute(Var::Z, &zt());
    RatFunc::new(&x * &w, &Poly::one() - &(&x * &k))
}

pub fn clump_kernel(model: &TextModel, w: &Word) -> Result<ClumpKernel> {
    let l = single_word_languages(model, w)?;
    Ok(ClumpKernel {
        word: w.clone(),
        kernel: kernel_from(&l)?,
    })
}

/// Text generating function with every clump statistic marked.
#[derive(Clone, Debug)]
pub struct ClumpStatisticsGF {
    /// Occurrence markers: `[X]` for a single word, `x1..xr` for a set.
    pub markers: Vec<Var>,
    pub g: RatFunc,
}

impl ClumpStatisticsGF {
    fn keep(&self, keep: &[Var]) -> Result<RatFunc> {
        let one = Q::one();
        let mut f = self.g.clone();
        for v in self.markers.iter().chain([Var::T, Var::U].iter()) {
            if !keep.contains(v) {
                f = f.eval(*v, &one)?;
            }
        }
        Ok(f)
    }

    /// All marks set to 1; equals 1/(1-z).
    pub fn total(&self) -> Result<RatFunc> {
        self.keep(&[])
    }

    /// Clump count in `u`.
    pub fn clump_count(&self) -> Result<RatFunc> {
        self.keep(&[Var::U])
    }

    /// Covered positions in `t`.
    pub fn coverage(&self) -> Result<RatFunc> {
        self.keep(&[Var::T])
    }

    /// Occurrences of every word, each in its own marker.
    pub fn occurrences(&self) -> Result<RatFunc> {
        self.keep(&self.markers.clone())
    }

    /// Total occurrences in a single variable `x`.
    pub fn total_occurrences(&self) -> Result<RatFunc> {
        let mut f = self.occurrences()?;
        let x = Poly::var(Var::X);
        for &m in &self.markers {
            if m != Var::X {
                f = f.substitute_poly(m, &x)?;
            }
        }
        Ok(f)
    }
}

/// Assembles `N + A·g·(1 - L·g)^{-1}·U` for a clump function `g`.
fn assemble(l: &SingleWordLanguages, clump: &RatFunc) -> Result<RatFunc> {
    let w = RatFunc::from(l.weight.clone());
    let a = l.r.div(&w)?;
    let gap = (&l.m - &RatFunc::from(l.k.clone())).div(&w)?;
    let star = (&gap * clump).quasi_inverse()?;
    Ok(&l.n + &(&(&(&a * clump) * &star) * &l.u))
}

pub fn clump_text_gf(model: &TextModel, w: &Word) -> Result<ClumpStatisticsGF> {
    let l = single_word_languages(model, w)?;
    let kernel = kernel_from(&l)?;
    let g = assemble(&l, &(&RatFunc::var(Var::U) * &kernel))?;
    Ok(ClumpStatisticsGF {
        markers: vec![Var::X],
        g,
    })
}

/// O(z, u) = N + u R U / (1 - u M + (u - 1) 𝒦).
pub fn clump_count_gf(model: &TextModel, w: &Word) -> Result<RatFunc> {
    let l = single_word_languages(model, w)?;
    let u = RatFunc::var(Var::U);
    let k = RatFunc::from(l.k.clone());
    let den = &(&RatFunc::one() - &(&u * &l.m)) + &(&(&u - &RatFunc::one()) * &k);
    Ok(&l.n + &(&(&u * &l.r) * &l.u).div(&den)?)
}

/// Σ Γₙ zⁿ = π_w z^{|w|} (1 - 𝒦(z)) / (1 - z)².
pub fn expected_clumps_gf(model: &TextModel, w: &Word) -> Result<RatFunc> {
    let l = single_word_languages(model, w)?;
    let omz = &Poly::one() - &Poly::var(Var::Z);
    RatFunc::new(&l.weight * &(&Poly::one() - &l.k), &omz * &omz)
}

/// Expected number of clumps Γₙ in a text of length `n`.
pub fn expected_clumps(model: &TextModel, w: &Word, n: usize) -> Result<Q> {
    Ok(scalar_series(&expected_clumps_gf(model, w)?, n)?.swap_remove(n))
}

/// 𝔎^(k)(z, v) = π_w z^{|w|} (1/(1 - 𝒦) + (v - 1) 𝒦^{k-1}).
pub fn kclump_kernel(model: &TextModel, w: &Word, k: usize) -> Result<RatFunc> {
    if k < 1 {
        return Err(Error::Domain("k-clumps need k >= 1".into()));
    }
    let l = single_word_languages(model, w)?;
    kclump_kernel_from(&l, k)
}

fn kclump_kernel_from(l: &SingleWordLanguages, k: usize) -> Result<RatFunc> {
    let kk = RatFunc::from(l.k.clone());
    let w = RatFunc::from(l.weight.clone());
    let v1 = &RatFunc::var(Var::V) - &RatFunc::one();
    Ok(&w * &(&kk.quasi_inverse()? + &(&v1 * &kk.pow(k as u32 - 1))))
}

/// `[z^n v^i]` is the probability of exactly `i` clumps with exactly `k`
/// occurrences.
pub fn kclump_gf(model: &TextModel, w: &Word, k: usize) -> Result<RatFunc> {
    if k < 1 {
        return Err(Error::Domain("k-clumps need k >= 1".into()));
    }
    let l = single_word_languages(model, w)?;
    assemble(&l, &kclump_kernel_from(&l, k)?)
}

/// Σ 𝐄[Pₙ] zⁿ where Pₙ is the number of positions covered by clumps.
pub fn expected_coverage_gf(model: &TextModel, w: &Word) -> Result<RatFunc> {
    let cov = clump_text_gf(model, w)?.coverage()?;
    cov.derivative(Var::T).eval(Var::T, &Q::one())
}

/// `(𝐄[Pₙ], Hₙ)` with Hₙ = 𝐄[Pₙ]/n the probability that a given position
/// is covered by a clump.
pub fn coverage_stats(model: &TextModel, w: &Word, n: usize) -> Result<(Q, Q)> {
    if n < 1 {
        return Err(Error::Domain("coverage needs n >= 1".into()));
    }
    let e = scalar_series(&expected_coverage_gf(model, w)?, n)?.swap_remove(n);
    let h = &e / Q::from_integer((n as i64).into());
    Ok((e, h))
}

/// Clump-size law in an infinite text, read as the clump kernel's length
/// series normalized by its total mass 𝔎(1) = π_w / (1 - 𝒦(1)).
#[derive(Clone, Debug, PartialEq)]
pub struct ClumpSizeLaw {
    /// `(size, [z^size] 𝔎(z,1,1))` for every size up to the cap with
    /// nonzero weight.
    pub raw: Vec<(usize, Q)>,
    /// Total kernel mass, `None` when 𝒦(1) >= 1.
    pub normalization: Option<Q>,
    /// Raw weights divided by the normalization (raw weights if divergent).
    pub weights: Vec<(usize, Q)>,
}

pub fn clump_size_distribution(
    model: &TextModel,
    w: &Word,
    max_size: usize,
) -> Result<ClumpSizeLaw> {
    if max_size < w.len() {
        return Err(Error::Domain(format!(
            "max_size must be at least |w| = {}",
            w.len()
        )));
    }
    let l = single_word_languages(model, w)?;
    let one = Q::one();
    let kernel = kernel_from(&l)?.eval(Var::X, &one)?.eval(Var::T, &one)?;
    let series = scalar_series(&kernel, max_size)?;
    let raw: Vec<(usize, Q)> = series
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let k1 = l.k.eval(Var::Z, &one).constant_term();
    let normalization = (k1 < one)
        .then(|| model.bernoulli_weight(w).map(|p| p / (&one - &k1)))
        .transpose()?;
    let weights = match &normalization {
        Some(c) => raw.iter().map(|(s, p)| (*s, p / c)).collect(),
        None => raw.clone(),
    };
    Ok(ClumpSizeLaw {
        raw,
        normalization,
        weights,
    })
}

/// Matrices of the clump decomposition for a reduced word set.
#[derive(Clone, Debug)]
pub struct MultiWordClumpMatrices {
    /// Weighted step polynomials 𝕂ᵢⱼ(z), one occurrence to the next inside
    /// a clump.
    pub k: Vec<Vec<Poly>>,
    /// 𝕊 = (I - 𝕂)^{-1}, unmarked.
    pub s: RfMatrix,
    /// Marked clump matrix 𝔾.
    pub g: RfMatrix,
    pub stats: ClumpStatisticsGF,
}

fn step_polys(model: &TextModel, set: &ReducedWordSet) -> Result<Vec<Vec<Poly>>> {
    minimal_extension_matrix(set)
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| weighted_polynomial(c.words(), model, Var::Z))
                .collect()
        })
        .collect()
}

/// Writes rational functions whose denominators involve `z` only over their
/// least common denominator.
fn over_common_denominator(fs: &[RatFunc]) -> Result<(Vec<Poly>, Poly)> {
    let mut den = Poly::one();
    for f in fs {
        if !f.den().is_univariate_in(Var::Z) {
            return Err(Error::Internal("expected a denominator in z only".into()));
        }
        let g = Poly::gcd_univariate(&den, f.den(), Var::Z);
        den = &den * &f.den().div_exact(&g).expect("gcd divides");
    }
    let nums = fs
        .iter()
        .map(|f| f.num() * &den.div_exact(f.den()).expect("lcm is a multiple"))
        .collect();
    Ok((nums, den))
}

fn poly_identity(r: usize) -> Vec<Vec<Poly>> {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { Poly::one() } else { Poly::zero() })
                .collect()
        })
        .collect()
}

/// `(adj(I - K), det(I - K))` for a polynomial matrix `K` with `K(0) = 0`.
fn star_adjugate(k: &[Vec<Poly>]) -> Result<(Vec<Vec<Poly>>, Poly)> {
    let r = k.len();
    let a: Vec<Vec<Poly>> = (0..r)
        .map(|i| (0..r).map(|j| &poly_identity(r)[i][j] - &k[i][j]).collect())
        .collect();
    crate::symbolic::bareiss_solve(&a, &poly_identity(r))
}

/// Assembles `N + (Rᵢ/Wᵢ) 𝔾 (I - L 𝔾)^{-1} U` with `L_ij = (M_ij - 𝕂_ij)/W_j`
/// and the clump matrix `𝔾 = Ĝ / Δ`. Every language function has a
/// denominator in `z` alone, so with `L = L̂/δ` the whole expression reduces
/// to `N + δ âᵀ Ĝ B^{-1} Û / (d_a d_u)` where `B = δΔ I - L̂ Ĝ` is polynomial.
fn assemble_multi(
    l: &crate::languages::MultiWordLanguages,
    k: &[Vec<Poly>],
    ghat: &[Vec<Poly>],
    delta: &Poly,
) -> Result<RatFunc> {
    let r = l.words.len();
    let w: Vec<RatFunc> = l.weights.iter().cloned().map(RatFunc::from).collect();
    let mut gaps = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            gaps.push((&l.m[i][j] - &RatFunc::from(k[i][j].clone())).div(&w[j])?);
        }
    }
    let (lhat, dl) = over_common_denominator(&gaps)?;
    let heads: Vec<RatFunc> = (0..r).map(|i| l.r[i].div(&w[i])).collect::<Result<_>>()?;
    let (ahat, da) = over_common_denominator(&heads)?;
    let (uhat, du) = over_common_denominator(&l.u)?;

    let scale = &dl * delta;
    let b: Vec<Vec<Poly>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let mut e = if i == j { scale.clone() } else { Poly::zero() };
                    for m in 0..r {
                        e = &e - &(&lhat[i * r + m] * &ghat[m][j]);
                    }
                    e
                })
                .collect()
        })
        .collect();
    let ucol: Vec<Vec<Poly>> = uhat.into_iter().map(|p| vec![p]).collect();
    let (y, det) = crate::symbolic::bareiss_solve(&b, &ucol)?;
    let mut total = Poly::zero();
    for i in 0..r {
        let mut row = Poly::zero();
        for j in 0..r {
            if !ghat[i][j].is_zero() {
                row = &row + &(&ghat[i][j] * &y[j][0]);
            }
        }
        total = &total + &(&ahat[i] * &row);
    }
    let tail = RatFunc::new(&dl * &total, &(&da * &du) * &det)?;
    Ok(&l.n + &tail)
}

pub fn multi_word_clump_gf(
    model: &TextModel,
    set: &ReducedWordSet,
) -> Result<MultiWordClumpMatrices> {
    if set.len() > Var::MAX_INDEXED as usize {
        return Err(Error::Unsupported(format!(
            "at most {} words",
            Var::MAX_INDEXED
        )));
    }
    let l = multi_word_languages(model, set)?;
    let r = set.len();
    let k = step_polys(model, set)?;
    let (adj, det) = star_adjugate(&k)?;
    let s: RfMatrix = adj
        .iter()
        .map(|row| {
            row.iter()
                .map(|a| RatFunc::new(a.clone(), det.clone()))
                .collect()
        })
        .collect::<Result<_>>()?;
    let x: Vec<Poly> = (0..r).map(|i| Poly::var(word_marker(i))).collect();
    // Marked steps: xⱼ per landed occurrence, z -> zt inside the clump.
    let kx: Vec<Vec<Poly>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| &x[j] * &k[i][j].substitute(Var::Z, &zt()))
                .collect()
        })
        .collect();
    let (adjx, delta) = star_adjugate(&kx)?;
    let u = Poly::var(Var::U);
    let ghat: Vec<Vec<Poly>> = (0..r)
        .map(|i| {
            let lead = &(&u * &x[i]) * &l.weights[i].substitute(Var::Z, &zt());
            (0..r).map(|j| &lead * &adjx[i][j]).collect()
        })
        .collect();
    let full = assemble_multi(&l, &k, &ghat, &delta)?;
    let g: RfMatrix = ghat
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| RatFunc::new(p.clone(), delta.clone()))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(MultiWordClumpMatrices {
        k,
        s,
        g,
        stats: ClumpStatisticsGF {
            markers: (0..r).map(word_marker).collect(),
            g: full,
        },
    })
}

/// k-clump generating function of a word set, in `z` and `v`.
pub fn multi_kclump_gf(model: &TextModel, set: &ReducedWordSet, kk: usize) -> Result<RatFunc> {
    if kk < 1 {
        return Err(Error::Domain("k-clumps need k >= 1".into()));
    }
    let l = multi_word_languages(model, set)?;
    let r = set.len();
    let k = step_polys(model, set)?;
    let (adj, delta) = star_adjugate(&k)?;
    let mut kpow = poly_identity(r);
    for _ in 1..kk {
        kpow = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).fold(Poly::zero(), |acc, m| &acc + &(&kpow[i][m] * &k[m][j])))
                    .collect()
            })
            .collect();
    }
    // 𝔾ᵢⱼ = Wᵢ (𝕊ᵢⱼ + (v - 1)(𝕂^{k-1})ᵢⱼ) over the denominator det(I - 𝕂).
    let v1 = &Poly::var(Var::V) - &Poly::one();
    let ghat: Vec<Vec<Poly>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| &l.weights[i] * &(&adj[i][j] + &(&(&v1 * &delta) * &kpow[i][j])))
                .collect()
        })
        .collect();
    assemble_multi(&l, &k, &ghat, &delta)
}

/// Every clump statistic of a word set: formal languages under a Bernoulli
/// model, the clump automaton under a Markov model.
pub fn clump_statistics_gf(model: &TextModel, set: &ReducedWordSet) -> Result<ClumpStatisticsGF> {
    if !model.is_bernoulli() {
        let a = crate::automaton::build_clump_automaton(
            &crate::automaton::build_x_set(set),
            model.alphabet(),
        )?;
        return crate::automaton::automaton_gf(&a, model);
    }
    if set.len() == 1 {
        clump_text_gf(model, set.get(0))
    } else {
        Ok(multi_word_clump_gf(model, set)?.stats)
    }
}

/// k-clump generating function for one word or a set; Bernoulli models only.
pub fn kclump_gf_any(model: &TextModel, set: &ReducedWordSet, k: usize) -> Result<RatFunc> {
    if set.len() == 1 {
        kclump_gf(model, set.get(0), k)
    } else {
        multi_kclump_gf(model, set, k)
    }
}

/// Exact mean and variance of the exponent of `mark` in `[z^n] f`, for
/// `n = 0..=horizon`. Every other variable must already be specialized.
pub fn moment_series(f: &RatFunc, mark: Var, horizon: usize) -> Result<Vec<(Q, Q)>> {
    let one = Q::one();
    let d1 = f.derivative(mark);
    let mean = scalar_series(&d1.eval(mark, &one)?, horizon)?;
    let fact2 = scalar_series(&d1.derivative(mark).eval(mark, &one)?, horizon)?;
    Ok(mean
        .into_iter()
        .zip(fact2)
        .map(|(m, f2)| {
            let var = &f2 + &m - &m * &m;
            (m, var)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::occurrence_gf;
    use crate::model::Alphabet;
    use crate::oracle::{exhaustive_joint, project, Statistic, DEFAULT_BUDGET};
    use crate::symbolic::{identity, mat_mul, series_coefficients};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn uniform() -> TextModel {
        TextModel::uniform(Alphabet::binary())
    }

    fn third() -> TextModel {
        TextModel::bernoulli(Alphabet::binary(), vec![q(1, 3), q(2, 3)]).unwrap()
    }

    fn geometric() -> RatFunc {
        (&RatFunc::one() - &RatFunc::var(Var::Z)).recip().unwrap()
    }

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    #[test]
    fn kernel_examples() {
        let aa = clump_kernel(&uniform(), &w("aa")).unwrap().kernel;
        let x = RatFunc::var(Var::X);
        let ztr = RatFunc::from(zt());
        let expect = (&x * &ztr.pow(2))
            .scale(&q(1, 4))
            .div(&(&RatFunc::one() - &(&x * &ztr).scale(&q(1, 2))))
            .unwrap();
        assert!(aa.equals(&expect));
        let ab = clump_kernel(&uniform(), &w("ab")).unwrap().kernel;
        assert!(ab.equals(&(&x * &ztr.pow(2)).scale(&q(1, 4))));
        // Two-occurrence clumps of aa: only aaa.
        let s = series_coefficients(&aa.eval(Var::T, &Q::one()).unwrap(), 4).unwrap();
        assert_eq!(s.distribution(3, Var::X), vec![q(0, 1), q(0, 1), q(1, 8)]);
    }

    #[test]
    fn text_gf_specializations() {
        for word in ["aa", "ab", "aba", "abaabaaba", "bababa"] {
            for model in [uniform(), third()] {
                let g = clump_text_gf(&model, &w(word)).unwrap();
                assert!(g.total().unwrap().equals(&geometric()));
                let f = occurrence_gf(&model, &w(word)).unwrap();
                assert!(g.occurrences().unwrap().equals(&f), "{word}");
                assert!(g
                    .clump_count()
                    .unwrap()
                    .equals(&clump_count_gf(&model, &w(word)).unwrap()));
            }
        }
    }

    #[test]
    fn small_examples() {
        let o = clump_count_gf(&uniform(), &w("aa")).unwrap();
        assert!(o.eval(Var::U, &Q::one()).unwrap().equals(&geometric()));
        let s = series_coefficients(&o, 3).unwrap();
        assert_eq!(s.distribution(3, Var::U), vec![q(5, 8), q(3, 8)]);
        let s = series_coefficients(&clump_count_gf(&uniform(), &w("aaa")).unwrap(), 3).unwrap();
        assert_eq!(s.distribution(3, Var::U), vec![q(7, 8), q(1, 8)]);
        assert_eq!(expected_clumps(&uniform(), &w("aa"), 1).unwrap(), q(0, 1));
        assert_eq!(expected_clumps(&uniform(), &w("aa"), 2).unwrap(), q(1, 4));
        assert_eq!(expected_clumps(&uniform(), &w("aa"), 3).unwrap(), q(3, 8));
    }

    #[test]
    fn kclump_examples() {
        let one = Q::one();
        for k in 1..4 {
            let f = kclump_gf(&uniform(), &w("aa"), k).unwrap();
            assert!(f.eval(Var::V, &one).unwrap().equals(&geometric()));
        }
        let mean = |k| {
            let f = kclump_gf(&uniform(), &w("aa"), k).unwrap();
            scalar_series(&f.derivative(Var::V).eval(Var::V, &one).unwrap(), 3).unwrap()[3].clone()
        };
        assert_eq!(mean(1), q(1, 4));
        assert_eq!(mean(2), q(1, 8));
        assert!(matches!(
            kclump_gf(&uniform(), &w("aa"), 0),
            Err(Error::Domain(_))
        ));
        // No clump of ab has two occurrences.
        let none = kclump_gf(&uniform(), &w("ab"), 2).unwrap();
        assert!(!none.uses(Var::V));
    }

    #[test]
    fn coverage_examples() {
        assert_eq!(
            coverage_stats(&uniform(), &w("aa"), 1).unwrap(),
            (q(0, 1), q(0, 1))
        );
        assert_eq!(
            coverage_stats(&uniform(), &w("aa"), 2).unwrap(),
            (q(1, 2), q(1, 4))
        );
        // Texts aab, baa cover 2 and aaa covers 3: (2 + 2 + 3)/8.
        assert_eq!(coverage_stats(&uniform(), &w("aa"), 3).unwrap().0, q(7, 8));
    }

    #[test]
    fn clump_size_examples() {
        let ab = clump_size_distribution(&uniform(), &w("ab"), 10).unwrap();
        assert_eq!(ab.weights, vec![(2, q(1, 1))]);
        let aa = clump_size_distribution(&uniform(), &w("aa"), 8).unwrap();
        assert_eq!(aa.normalization, Some(q(1, 2)));
        for (s, p) in &aa.weights {
            assert_eq!(
                p,
                &(q(1, 2) * Q::new(1.into(), num_bigint::BigInt::from(2).pow(*s as u32 - 2)))
            );
        }
        let long = clump_size_distribution(&uniform(), &w("abaabaaba"), 20).unwrap();
        let sizes: Vec<usize> = long.raw.iter().map(|(s, _)| *s).collect();
        assert_eq!(sizes, vec![9, 12, 15, 17, 18, 20]);
    }

    fn assert_matches_oracle(
        model: &TextModel,
        set: &ReducedWordSet,
        stats: &ClumpStatisticsGF,
        nmax: usize,
    ) {
        let counts = series_coefficients(&stats.clump_count().unwrap(), nmax).unwrap();
        let cover = series_coefficients(&stats.coverage().unwrap(), nmax).unwrap();
        let occ = series_coefficients(&stats.total_occurrences().unwrap(), nmax).unwrap();
        for n in 0..=nmax {
            let joint = exhaustive_joint(model, set, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(
                counts.distribution(n, Var::U),
                project(&joint, n, Statistic::ClumpCount).to_vec(),
                "n={n}"
            );
            assert_eq!(
                cover.distribution(n, Var::T),
                project(&joint, n, Statistic::Coverage).to_vec(),
                "n={n}"
            );
            assert_eq!(
                occ.distribution(n, Var::X),
                project(&joint, n, Statistic::Occurrences).to_vec(),
                "n={n}"
            );
        }
    }

    #[test]
    fn single_word_against_oracle() {
        for word in ["aa", "aba", "bababa"] {
            let set = ReducedWordSet::parse(word).unwrap();
            let stats = clump_text_gf(&third(), &w(word)).unwrap();
            assert_matches_oracle(&third(), &set, &stats, 10);
        }
    }

    #[test]
    fn multi_word_against_oracle() {
        for words in ["aba,bba", "aabaa,baab"] {
            let set = ReducedWordSet::parse(words).unwrap();
            for model in [uniform(), third()] {
                let mw = multi_word_clump_gf(&model, &set).unwrap();
                assert!(mw.stats.total().unwrap().equals(&geometric()));
                assert_matches_oracle(&model, &set, &mw.stats, 10);
            }
        }
    }

    #[test]
    fn multi_word_matrices() {
        let set = ReducedWordSet::parse("abab,baba").unwrap();
        let mw = multi_word_clump_gf(&uniform(), &set).unwrap();
        let kmat: RfMatrix =
            mw.k.iter()
                .map(|r| r.iter().cloned().map(RatFunc::from).collect())
                .collect();
        let ks = mat_mul(&kmat, &mw.s);
        for i in 0..2 {
            for j in 0..2 {
                let rhs = &identity(2)[i][j] + &ks[i][j];
                assert!(mw.s[i][j].equals(&rhs));
            }
        }
        // Every clump starts with the weight of its first word.
        let one = Q::one();
        for i in 0..2 {
            for j in 0..2 {
                let mut gij = mw.g[i][j].clone();
                for v in [Var::U, Var::T, Var::Xi(1), Var::Xi(2)] {
                    gij = gij.eval(v, &one).unwrap();
                }
                let lead = scalar_series(&gij, 4).unwrap();
                assert_eq!(lead[4], if i == j { q(1, 16) } else { q(0, 1) });
            }
        }
    }

    #[test]
    fn one_word_set_reproduces_single_word_engine() {
        for word in ["aa", "abaabaaba"] {
            let set = ReducedWordSet::parse(word).unwrap();
            let multi = multi_word_clump_gf(&third(), &set).unwrap().stats.g;
            let multi = multi
                .substitute_poly(Var::Xi(1), &Poly::var(Var::X))
                .unwrap();
            let single = clump_text_gf(&third(), &w(word)).unwrap().g;
            assert!(multi.equals(&single));
            for k in 1..3 {
                let a = multi_kclump_gf(&third(), &set, k).unwrap();
                let b = kclump_gf(&third(), &w(word), k).unwrap();
                assert!(a.equals(&b));
            }
        }
    }

    #[test]
    fn multi_kclumps_against_oracle() {
        let set = ReducedWordSet::parse("aabaa,baab").unwrap();
        for k in 1..=2 {
            let f = multi_kclump_gf(&uniform(), &set, k).unwrap();
            let s = series_coefficients(&f, 10).unwrap();
            for n in 0..=10 {
                let joint = exhaustive_joint(&uniform(), &set, n, DEFAULT_BUDGET).unwrap();
                assert_eq!(
                    s.distribution(n, Var::V),
                    project(&joint, n, Statistic::KClumpCount(k)).to_vec()
                );
            }
        }
    }
}
