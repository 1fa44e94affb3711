//! Right, Minimal, Ultimate and Not languages of a word or a reduced word
//! set, and the occurrence-counting text generating functions built on them.

use crate::correlation::{autocorrelation_set, correlation_matrix, prefix_code};
use crate::error::{Error, Result};
use crate::model::{ReducedWordSet, TextModel, Word};
use crate::symbolic::{quasi_inverse_solve, solve, Poly, RatFunc, RfMatrix, Var};

fn require_bernoulli(model: &TextModel) -> Result<()> {
    if model.is_bernoulli() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "language generating functions need a Bernoulli model; use the automaton for Markov models".into(),
        ))
    }
}

/// π_w z^{|w|}.
pub fn word_weight(model: &TextModel, w: &Word) -> Result<Poly> {
    Ok(Poly::monomial(
        model.bernoulli_weight(w)?,
        &[(Var::Z, w.len() as u32)],
    ))
}

#[derive(Clone, Debug)]
pub struct SingleWordLanguages {
    pub word: Word,
    /// π_w z^{|w|}.
    pub weight: Poly,
    /// Autocorrelation polynomial C(z).
    pub c: Poly,
    /// Prefix-code polynomial 𝒦(z).
    pub k: Poly,
    pub d: Poly,
    pub r: RatFunc,
    pub m: RatFunc,
    pub u: RatFunc,
    pub n: RatFunc,
}

pub fn single_word_languages(model: &TextModel, w: &Word) -> Result<SingleWordLanguages> {
    require_bernoulli(model)?;
    if w.len() < 2 {
        return Err(Error::MinLength(w.clone()));
    }
    let weight = word_weight(model, w)?;
    let corr = autocorrelation_set(w);
    let c = corr.polynomial(model)?;
    let k = prefix_code(&corr).polynomial(model, Var::Z)?;
    let one_minus_z = &Poly::one() - &Poly::var(Var::Z);
    let d = &weight + &(&one_minus_z * &c);
    let r = RatFunc::new(weight.clone(), d.clone())?;
    let m = RatFunc::new(&d - &one_minus_z, d.clone())?;
    let u = RatFunc::new(Poly::one(), d.clone())?;
    let n = RatFunc::new(c.clone(), d.clone())?;
    Ok(SingleWordLanguages {
        word: w.clone(),
        weight,
        c,
        k,
        d,
        r,
        m,
        u,
        n,
    })
}

/// F(z, x): `[z^n x^k]` is the probability of exactly `k` occurrences of `w`
/// in a text of length `n`.
pub fn occurrence_gf(model: &TextModel, w: &Word) -> Result<RatFunc> {
    let l = single_word_languages(model, w)?;
    let x = Poly::var(Var::X);
    let one_minus_x = &Poly::one() - &x;
    // 1 / (1 - z + W(1-x)/(x + (1-x)C)) written over one denominator.
    let inner = &x + &(&one_minus_x * &l.c);
    let den = &(&(&Poly::one() - &Poly::var(Var::Z)) * &inner) + &(&l.weight * &one_minus_x);
    RatFunc::new(inner, den)
}

#[derive(Clone, Debug)]
pub struct MultiWordLanguages {
    pub words: ReducedWordSet,
    pub weights: Vec<Poly>,
    /// Correlation matrix with 1 on the diagonal for ε.
    pub c: Vec<Vec<Poly>>,
    pub m: RfMatrix,
    pub r: Vec<RatFunc>,
    pub u: Vec<RatFunc>,
    pub n: RatFunc,
}

fn one_minus_z() -> RatFunc {
    &RatFunc::one() - &RatFunc::var(Var::Z)
}

pub fn multi_word_languages(model: &TextModel, set: &ReducedWordSet) -> Result<MultiWordLanguages> {
    require_bernoulli(model)?;
    let r = set.len();
    let weights: Vec<Poly> = set
        .words()
        .iter()
        .map(|w| word_weight(model, w))
        .collect::<Result<_>>()?;
    let c: Vec<Vec<Poly>> = correlation_matrix(set)
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| s.polynomial(model))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let omz = one_minus_z();
    let w_rf: Vec<RatFunc> = weights.iter().cloned().map(RatFunc::from).collect();

    // M = I - (1-z) D^{-1} with D = (1-z)C + 1 W^T.
    let dmat: RfMatrix = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| &(&omz * &RatFunc::from(c[i][j].clone())) + &w_rf[j])
                .collect()
        })
        .collect();
    let dinv = solve(&dmat, &crate::symbolic::identity(r))?;
    let m: RfMatrix = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let delta = if i == j {
                        RatFunc::one()
                    } else {
                        RatFunc::zero()
                    };
                    &delta - &(&omz * &dinv[i][j])
                })
                .collect()
        })
        .collect();

    // R^T = W^T (I - M) / (1 - z).
    let rvec: Vec<RatFunc> = (0..r)
        .map(|j| {
            let mut acc = w_rf[j].clone();
            for i in 0..r {
                acc = &acc - &(&w_rf[i] * &m[i][j]);
            }
            acc.div(&omz)
        })
        .collect::<Result<_>>()?;

    // U = (1 - M 1) / (1 - z).
    let uvec: Vec<RatFunc> = (0..r)
        .map(|i| {
            let mut acc = RatFunc::one();
            for j in 0..r {
                acc = &acc - &m[i][j];
            }
            acc.div(&omz)
        })
        .collect::<Result<_>>()?;

    // N W_j = R_j + Σ_i R_i (C_ij - δ_ij), read off at j = 0.
    let n_from = |j: usize| -> Result<RatFunc> {
        let mut acc = rvec[j].clone();
        for i in 0..r {
            let cij = &RatFunc::from(c[i][j].clone())
                - &if i == j {
                    RatFunc::one()
                } else {
                    RatFunc::zero()
                };
            acc = &acc + &(&rvec[i] * &cij);
        }
        acc.div(&w_rf[j])
    };
    let n = n_from(0)?;

    let langs = MultiWordLanguages {
        words: set.clone(),
        weights,
        c,
        m,
        r: rvec,
        u: uvec,
        n,
    };
    let failures = langs.identity_failures()?;
    if !failures.is_empty() {
        return Err(Error::Internal(format!(
            "language identities fail: {failures:?}"
        )));
    }
    Ok(langs)
}

impl MultiWordLanguages {
    /// Names of the language identities that do not hold exactly.
    pub fn identity_failures(&self) -> Result<Vec<String>> {
        let r = self.words.len();
        let z = RatFunc::var(Var::Z);
        let omz = one_minus_z();
        let w: Vec<RatFunc> = self.weights.iter().cloned().map(RatFunc::from).collect();
        let mut bad = Vec::new();

        // (I - M)^{-1} - I = W_j / (1-z) + C_ij - δ_ij.
        let eye = crate::symbolic::identity(r);
        let inv = quasi_inverse_solve(&self.m, &eye)?;
        for i in 0..r {
            for j in 0..r {
                let lhs = &inv[i][j] - &eye[i][j];
                let rhs = &(&w[j].div(&omz)? + &RatFunc::from(self.c[i][j].clone())) - &eye[i][j];
                if !lhs.equals(&rhs) {
                    bad.push(format!("quasi-inverse({i},{j})"));
                }
            }
        }
        for i in 0..r {
            // z U_i = Σ_j M_ij + U_i - 1.
            let mut rhs = &self.u[i] - &RatFunc::one();
            for j in 0..r {
                rhs = &rhs + &self.m[i][j];
            }
            if !(&z * &self.u[i]).equals(&rhs) {
                bad.push(format!("ultimate({i})"));
            }
        }
        for j in 0..r {
            // z R_j - (R_j - W_j) = Σ_i W_i M_ij.
            let lhs = &(&z * &self.r[j]) - &(&self.r[j] - &w[j]);
            let mut rhs = RatFunc::zero();
            for i in 0..r {
                rhs = &rhs + &(&w[i] * &self.m[i][j]);
            }
            if !lhs.equals(&rhs) {
                bad.push(format!("right({j})"));
            }
            // N W_j = R_j + Σ_i R_i (C_ij - δ_ij).
            let mut rhs = self.r[j].clone();
            for i in 0..r {
                let cij = &RatFunc::from(self.c[i][j].clone()) - &eye[i][j];
                rhs = &rhs + &(&self.r[i] * &cij);
            }
            if !(&self.n * &w[j]).equals(&rhs) {
                bad.push(format!("not({j})"));
            }
        }
        Ok(bad)
    }
}

/// The occurrence marker of word `i` (0-based) in multi-word functions.
pub fn word_marker(i: usize) -> Var {
    Var::Xi(u8::try_from(i + 1).expect("too many words"))
}

/// F(z, x₁..x_r): `[z^n x₁^{k₁}..x_r^{k_r}]` is the probability of the
/// joint occurrence counts.
pub fn multi_occurrence_gf(model: &TextModel, set: &ReducedWordSet) -> Result<RatFunc> {
    if set.len() > Var::MAX_INDEXED as usize {
        return Err(Error::Unsupported(format!(
            "at most {} words",
            Var::MAX_INDEXED
        )));
    }
    let l = multi_word_languages(model, set)?;
    let r = set.len();
    let x: Vec<RatFunc> = (0..r).map(|i| RatFunc::var(word_marker(i))).collect();
    let mx: RfMatrix = (0..r)
        .map(|i| (0..r).map(|j| &l.m[i][j] * &x[j]).collect())
        .collect();
    let b: RfMatrix = l.u.iter().map(|u| vec![u.clone()]).collect();
    let y = quasi_inverse_solve(&mx, &b)?;
    let mut f = l.n.clone();
    for i in 0..r {
        f = &f + &(&(&x[i] * &l.r[i]) * &y[i][0]);
    }
    Ok(f)
}

/// Words `m` of the minimal language of `w` up to length `max_len`, by
/// brute force: `w·m` ends with `w` and contains no other occurrence.
pub fn minimal_language_words(w: &Word, letters: &[u8], max_len: usize) -> Vec<Word> {
    let alphabet = crate::model::Alphabet::new(std::str::from_utf8(letters).unwrap_or("ab"))
        .expect("alphabet");
    let mut out = Vec::new();
    for len in 1..=max_len {
        for m in crate::model::enumerate_texts(&alphabet, len) {
            let wm = w.concat(&m);
            let t = wm.as_bytes();
            let hits = (0..=t.len() - w.len())
                .filter(|&s| t[s..].starts_with(w.as_bytes()))
                .count();
            if hits == 2 && w.is_suffix_of(&wm) {
                out.push(m);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::autocorrelation_set;
    use crate::model::Alphabet;
    use crate::oracle::{exhaustive_joint, DEFAULT_BUDGET};
    use crate::symbolic::{scalar_series, series_coefficients};
    use crate::Q;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn uniform() -> TextModel {
        TextModel::uniform(Alphabet::binary())
    }

    fn third() -> TextModel {
        TextModel::bernoulli(Alphabet::binary(), vec![q(1, 3), q(2, 3)]).unwrap()
    }

    fn zpoly(coeffs: &[(i64, i64, u32)]) -> Poly {
        coeffs.iter().fold(Poly::zero(), |acc, &(n, d, e)| {
            &acc + &Poly::monomial(q(n, d), &[(Var::Z, e)])
        })
    }

    fn geometric() -> RatFunc {
        one_minus_z().recip().unwrap()
    }

    #[test]
    fn single_word_polynomials() {
        let aa = single_word_languages(&uniform(), &Word::from("aa")).unwrap();
        assert_eq!(aa.c, zpoly(&[(1, 1, 0), (1, 2, 1)]));
        assert_eq!(aa.d, zpoly(&[(1, 1, 0), (-1, 2, 1), (-1, 4, 2)]));
        let ab = single_word_languages(&uniform(), &Word::from("ab")).unwrap();
        assert_eq!(ab.c, Poly::one());
        assert_eq!(ab.d, zpoly(&[(1, 1, 0), (-1, 1, 1), (1, 4, 2)]));
        let long = single_word_languages(&uniform(), &Word::from("abaabaaba")).unwrap();
        assert_eq!(
            long.c,
            zpoly(&[(1, 1, 0), (1, 8, 3), (1, 64, 6), (1, 256, 8)])
        );
    }

    #[test]
    fn closed_forms_hold() {
        for w in ["aa", "aba", "abaabaaba", "bababa"] {
            let l = single_word_languages(&third(), &Word::from(w)).unwrap();
            let d = RatFunc::from(l.d.clone());
            assert!((&l.r * &d).equals(&RatFunc::from(l.weight.clone())));
            assert!((&l.u * &d).is_one());
            assert!((&l.n * &d).equals(&RatFunc::from(l.c.clone())));
            // M = 1 + (z-1)/D.
            let rhs = &RatFunc::one() - &one_minus_z().div(&d).unwrap();
            assert!(l.m.equals(&rhs));
            // F assembled from the languages matches the closed form.
            let x = RatFunc::var(Var::X);
            let star = (&x * &l.m).quasi_inverse().unwrap();
            let f = &l.n + &(&(&(&x * &l.r) * &l.u) * &star);
            assert!(f.equals(&occurrence_gf(&third(), &Word::from(w)).unwrap()));
        }
    }

    #[test]
    fn occurrence_gf_examples() {
        let f = occurrence_gf(&uniform(), &Word::from("aa")).unwrap();
        assert!(f.eval(Var::X, &Q::one()).unwrap().equals(&geometric()));
        let s = series_coefficients(&f, 3).unwrap();
        assert_eq!(s.distribution(3, Var::X), vec![q(5, 8), q(2, 8), q(1, 8)]);
        // Expected occurrences (n - |w| + 1) π_w.
        for w in ["aa", "aba", "abaabaaba"] {
            let f = occurrence_gf(&third(), &Word::from(w)).unwrap();
            let e = f.derivative(Var::X).eval(Var::X, &Q::one()).unwrap();
            let series = scalar_series(&e, 20).unwrap();
            let pi = third().bernoulli_weight(&Word::from(w)).unwrap();
            for (n, c) in series.iter().enumerate() {
                let expect = if n >= w.len() {
                    &pi * Q::from_integer(((n - w.len() + 1) as i64).into())
                } else {
                    Q::zero()
                };
                assert_eq!(c, &expect);
            }
        }
    }

    #[test]
    fn second_moment_matches_enumeration() {
        let w = Word::from("aba");
        let set = ReducedWordSet::parse("aba").unwrap();
        let f = occurrence_gf(&third(), &w).unwrap();
        let one = Q::one();
        let d1 = f.derivative(Var::X);
        let xd = &RatFunc::var(Var::X) * &d1;
        let second = xd.derivative(Var::X).eval(Var::X, &one).unwrap();
        let series = scalar_series(&second, 10).unwrap();
        for n in 0..=10 {
            let joint = exhaustive_joint(&third(), &set, n, DEFAULT_BUDGET).unwrap();
            let ex2: Q = joint
                .iter()
                .map(|(t, p)| p * Q::from_integer((t.total_occurrences() as i64).pow(2).into()))
                .sum();
            assert_eq!(series[n], ex2, "n = {n}");
        }
    }

    #[test]
    fn multi_word_reduces_to_single_word() {
        for w in ["aa", "abaabaaba"] {
            let set = ReducedWordSet::parse(w).unwrap();
            let multi = multi_word_languages(&third(), &set).unwrap();
            let single = single_word_languages(&third(), &Word::from(w)).unwrap();
            assert!(multi.m[0][0].equals(&single.m));
            assert!(multi.r[0].equals(&single.r));
            assert!(multi.u[0].equals(&single.u));
            assert!(multi.n.equals(&single.n));
        }
    }

    #[test]
    fn multi_occurrence_gf_against_oracle() {
        for model in [uniform(), third()] {
            let set = ReducedWordSet::parse("aba,bba").unwrap();
            let f = multi_occurrence_gf(&model, &set).unwrap();
            let one = Q::one();
            let total = f
                .eval(Var::Xi(1), &one)
                .unwrap()
                .eval(Var::Xi(2), &one)
                .unwrap();
            assert!(total.equals(&geometric()));
            let marginal = f
                .eval(Var::Xi(2), &one)
                .unwrap()
                .substitute_poly(Var::Xi(1), &Poly::var(Var::X))
                .unwrap();
            let single = occurrence_gf(&model, &Word::from("aba")).unwrap();
            assert_eq!(
                series_coefficients(&marginal, 20).unwrap(),
                series_coefficients(&single, 20).unwrap()
            );
            let s = series_coefficients(&f, 10).unwrap();
            for n in 0..=10 {
                let joint = exhaustive_joint(&model, &set, n, DEFAULT_BUDGET).unwrap();
                let mut expect = Poly::zero();
                for (t, p) in &joint {
                    expect = &expect
                        + &Poly::monomial(
                            p.clone(),
                            &[
                                (Var::Xi(1), t.occurrences[0]),
                                (Var::Xi(2), t.occurrences[1]),
                            ],
                        );
                }
                assert_eq!(s.coeff(n), &expect, "n = {n}");
            }
        }
    }

    #[test]
    fn minimal_language_splits_into_code_and_words_ending_with_w() {
        for w in ["aa", "aba", "abaabaaba", "bababa", "aabaa"] {
            let w = Word::from(w);
            let code = prefix_code(&autocorrelation_set(&w));
            let minimal = minimal_language_words(&w, b"ab", 12);
            for k in code.words() {
                assert!(
                    minimal.contains(k),
                    "{k} missing from the minimal language of {w}"
                );
            }
            for m in minimal.iter().filter(|m| !code.words().contains(m)) {
                assert!(w.is_suffix_of(m), "{m} should end with {w}");
            }
            // The weighted count by length is the series of M(z).
            let l = single_word_languages(&uniform(), &w).unwrap();
            let series = scalar_series(&l.m, 12).unwrap();
            let model = uniform();
            for n in 1..=12 {
                let brute: Q = minimal
                    .iter()
                    .filter(|m| m.len() == n)
                    .map(|m| model.bernoulli_weight(m).unwrap())
                    .sum();
                assert_eq!(series[n], brute);
            }
        }
    }

    #[test]
    fn markov_models_are_rejected() {
        let m = crate::model::parse_model(
            "alphabet: ab\nmodel: markov\ninit a = 1/2\ninit b = 1/2\ntrans a a = 1\ntrans a b = 0\ntrans b a = 0\ntrans b b = 1\n",
        )
        .unwrap();
        assert!(matches!(
            single_word_languages(&m, &Word::from("aa")),
            Err(Error::Unsupported(_))
        ));
    }
}
