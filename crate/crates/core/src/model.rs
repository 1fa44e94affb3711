//! Alphabets, words, reduced word sets and the letter models that generate
//! random texts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Q;

/// An ordered set of single-character letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<u8>,
}

impl Alphabet {
    pub fn new(letters: &str) -> Result<Self> {
        let mut seen = Vec::new();
        for c in letters.chars() {
            if !c.is_ascii_graphic() {
                return Err(Error::Domain(format!(
                    "letter {c:?} is not a printable ASCII character"
                )));
            }
            let b = c as u8;
            if seen.contains(&b) {
                return Err(Error::Domain(format!("letter '{c}' repeated in alphabet")));
            }
            seen.push(b);
        }
        if seen.is_empty() {
            return Err(Error::Domain("empty alphabet".into()));
        }
        Ok(Alphabet { letters: seen })
    }

    pub fn binary() -> Self {
        Alphabet {
            letters: b"ab".to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn index_of(&self, letter: u8) -> Option<usize> {
        self.letters.iter().position(|&l| l == letter)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.as_bytes().iter().all(|&b| self.index_of(b).is_some())
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.as_bytes().iter().find(|&&b| self.index_of(b).is_none()) {
            Some(&b) => Err(Error::Domain(format!(
                "symbol '{}' of word {} is not in the alphabet {}",
                b as char, w, self
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.letters).unwrap_or("?"))
    }
}

/// A finite word; the empty word is allowed as a value (empty text, ε in
/// correlation sets). Word sets enforce their own length constraints.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Word(bytes.to_vec())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, b: u8) {
        self.0.push(b);
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        if self.0.is_empty() {
            return true;
        }
        other
            .0
            .windows(self.0.len())
            .any(|w| w == self.0.as_slice())
    }

    /// The suffix starting at byte offset `from`.
    pub fn suffix_from(&self, from: usize) -> Word {
        Word(self.0[from..].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.as_bytes().to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("<eps>")
        } else {
            f.write_str(&String::from_utf8_lossy(&self.0))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// A reduced set of words: every word has length at least 2, the words are
/// distinct, and none is a factor of another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWordSet {
    words: Vec<Word>,
}

impl ReducedWordSet {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Parses a comma separated list such as `aba,bba`.
    pub fn parse(list: &str) -> Result<Self> {
        let words: Vec<Word> = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Word::from)
            .collect();
        validate_reduced_set(&words)
    }
}

/// Checks the reduced-set conditions by a naive substring scan over all
/// ordered pairs.
pub fn validate_reduced_set(words: &[Word]) -> Result<ReducedWordSet> {
    if words.is_empty() {
        return Err(Error::Domain("empty word set".into()));
    }
    if let Some(w) = words.iter().find(|w| w.len() < 2) {
        return Err(Error::MinLength(w.clone()));
    }
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            if i == j {
                continue;
            }
            if a == b {
                return Err(Error::Duplicate(a.clone()));
            }
            if a.is_factor_of(b) {
                return Err(Error::NotReduced {
                    factor: a.clone(),
                    word: b.clone(),
                });
            }
        }
    }
    Ok(ReducedWordSet {
        words: words.to_vec(),
    })
}

/// Every text of length `n` over `alphabet`, in lexicographic order of the
/// alphabet's letter order.
pub fn enumerate_texts(alphabet: &Alphabet, n: usize) -> impl Iterator<Item = Word> + '_ {
    enumerate_texts_with_prefix(alphabet, &Word::empty(), n)
}

/// Texts of length `n` that start with `prefix`. Partitioning by prefix gives
/// disjoint slices of the full enumeration.
pub fn enumerate_texts_with_prefix<'a>(
    alphabet: &'a Alphabet,
    prefix: &Word,
    n: usize,
) -> impl Iterator<Item = Word> + 'a {
    let k = alphabet.len();
    let free = n.saturating_sub(prefix.len());
    let total = if prefix.len() > n {
        0
    } else {
        k.checked_pow(free as u32)
            .expect("text enumeration overflows usize")
    };
    let prefix = prefix.as_bytes().to_vec();
    (0..total).map(move |mut idx| {
        let mut buf = prefix.clone();
        let start = buf.len();
        buf.resize(start + free, 0);
        for pos in (start..start + free).rev() {
            buf[pos] = alphabet.letters[idx % k];
            idx /= k;
        }
        Word(buf)
    })
}

/// Letter model generating random texts.
#[derive(Clone, Debug, PartialEq)]
pub enum TextModel {
    Bernoulli {
        alphabet: Alphabet,
        probs: Vec<Q>,
    },
    Markov {
        alphabet: Alphabet,
        initial: Vec<Q>,
        /// `transition[a][b]` = P(next = b | current = a).
        transition: Vec<Vec<Q>>,
    },
}

fn check_distribution(what: &str, probs: &[Q]) -> Result<()> {
    if probs.iter().any(|p| p < &Q::zero() || p > &Q::one()) {
        return Err(Error::Domain(format!("{what}: probability outside [0,1]")));
    }
    let s: Q = probs.iter().sum();
    if !s.is_one() {
        return Err(Error::Domain(format!(
            "{what}: probabilities sum to {s}, not 1"
        )));
    }
    Ok(())
}

impl TextModel {
    pub fn bernoulli(alphabet: Alphabet, probs: Vec<Q>) -> Result<Self> {
        if probs.len() != alphabet.len() {
            return Err(Error::Domain("one probability per letter required".into()));
        }
        check_distribution("letter probabilities", &probs)?;
        Ok(TextModel::Bernoulli { alphabet, probs })
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        let probs = vec![Q::new(BigInt::one(), BigInt::from(k)); k];
        TextModel::Bernoulli { alphabet, probs }
    }

    pub fn markov(alphabet: Alphabet, initial: Vec<Q>, transition: Vec<Vec<Q>>) -> Result<Self> {
        let k = alphabet.len();
        if initial.len() != k || transition.len() != k || transition.iter().any(|r| r.len() != k) {
            return Err(Error::Domain(
                "Markov model dimensions do not match the alphabet".into(),
            ));
        }
        check_distribution("initial distribution", &initial)?;
        for (a, row) in transition.iter().enumerate() {
            check_distribution(
                &format!("transition row '{}'", alphabet.letters[a] as char),
                row,
            )?;
        }
        Ok(TextModel::Markov {
            alphabet,
            initial,
            transition,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            TextModel::Bernoulli { alphabet, .. } | TextModel::Markov { alphabet, .. } => alphabet,
        }
    }

    pub fn is_bernoulli(&self) -> bool {
        matches!(self, TextModel::Bernoulli { .. })
    }

    /// Letter probabilities of a Bernoulli model.
    pub fn letter_probs(&self) -> Result<&[Q]> {
        match self {
            TextModel::Bernoulli { probs, .. } => Ok(probs),
            TextModel::Markov { .. } => Err(Error::Unsupported(
                "this construction requires a Bernoulli model".into(),
            )),
        }
    }

    /// Largest letter probability (Bernoulli).
    pub fn max_letter_prob(&self) -> Result<Q> {
        Ok(self
            .letter_probs()?
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(Q::zero))
    }

    /// Smallest letter probability (Bernoulli).
    pub fn min_letter_prob(&self) -> Result<Q> {
        Ok(self
            .letter_probs()?
            .iter()
            .min()
            .cloned()
            .unwrap_or_else(Q::zero))
    }

    /// P(next letter = `b` | previous letter), with `prev = None` meaning the
    /// first letter of the text.
    pub fn step_prob(&self, prev: Option<u8>, b: u8) -> Result<Q> {
        let alphabet = self.alphabet();
        let bi = alphabet.index_of(b).ok_or_else(|| {
            Error::Domain(format!("symbol '{}' is not in the alphabet", b as char))
        })?;
        match self {
            TextModel::Bernoulli { probs, .. } => Ok(probs[bi].clone()),
            TextModel::Markov {
                initial,
                transition,
                ..
            } => match prev {
                None => Ok(initial[bi].clone()),
                Some(a) => {
                    let ai = alphabet.index_of(a).ok_or_else(|| {
                        Error::Domain(format!("symbol '{}' is not in the alphabet", a as char))
                    })?;
                    Ok(transition[ai][bi].clone())
                }
            },
        }
    }

    /// Probability that a random text starts with `w` (π_w).
    pub fn word_probability(&self, w: &Word) -> Result<Q> {
        self.alphabet().check(w)?;
        let mut p = Q::one();
        let mut prev = None;
        for &b in w.as_bytes() {
            p *= self.step_prob(prev, b)?;
            if p.is_zero() {
                return Ok(p);
            }
            prev = Some(b);
        }
        Ok(p)
    }

    /// Product of Bernoulli letter probabilities; used for correlation
    /// words, which do not start a text.
    pub fn bernoulli_weight(&self, w: &Word) -> Result<Q> {
        let probs = self.letter_probs()?;
        let alphabet = self.alphabet();
        alphabet.check(w)?;
        Ok(w.as_bytes()
            .iter()
            .map(|&b| probs[alphabet.index_of(b).unwrap()].clone())
            .product())
    }
}

/// Parses `num/den` or an integer.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|_| Error::Domain(format!("not a rational number: {s}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Domain(format!("zero denominator in {s}")));
            }
            Ok(Q::new(parse_int(n)?, d))
        }
        None => Ok(Q::from_integer(parse_int(s)?)),
    }
}

/// Parses the line-oriented model file format:
///
/// ```text
/// alphabet: ab
/// model: bernoulli
/// p a = 1/3
/// p b = 2/3
/// ```
///
/// Markov files use `model: markov` with `init a = 1/2` and `trans a b = 1/4`
/// lines. `#` starts a comment.
pub fn parse_model(text: &str) -> Result<TextModel> {
    let mut alphabet: Option<Alphabet> = None;
    let mut kind: Option<String> = None;
    let mut p = BTreeMap::new();
    let mut init = BTreeMap::new();
    let mut trans = BTreeMap::new();

    let perr = |line: usize, col: usize, msg: String| Error::Parse { line, col, msg };

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let col = content.len() - content.trim_start().len() + 1;
        let content = content.trim();
        if let Some(rest) = content.strip_prefix("alphabet:") {
            alphabet =
                Some(Alphabet::new(rest.trim()).map_err(|e| perr(line_no, col, e.to_string()))?);
            continue;
        }
        if let Some(rest) = content.strip_prefix("model:") {
            let k = rest.trim().to_ascii_lowercase();
            if k != "bernoulli" && k != "markov" {
                return Err(perr(line_no, col, format!("unknown model kind '{k}'")));
            }
            kind = Some(k);
            continue;
        }
        let (lhs, rhs) = content
            .split_once('=')
            .ok_or_else(|| perr(line_no, col, format!("expected '=' in '{content}'")))?;
        let rhs_col = col + lhs.len() + 1;
        let value = parse_rational(rhs).map_err(|e| perr(line_no, rhs_col, e.to_string()))?;
        let parts: Vec<&str> = lhs.split_whitespace().collect();
        let letter = |s: &str, c: usize| -> Result<u8> {
            if s.len() == 1 {
                Ok(s.as_bytes()[0])
            } else {
                Err(perr(line_no, c, format!("'{s}' is not a single letter")))
            }
        };
        match parts.as_slice() {
            ["p", a] => {
                p.insert(letter(a, col)?, value);
            }
            ["init", a] => {
                init.insert(letter(a, col)?, value);
            }
            ["trans", a, b] => {
                trans.insert((letter(a, col)?, letter(b, col)?), value);
            }
            _ => return Err(perr(line_no, col, format!("unrecognised line '{content}'"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| perr(1, 1, "missing 'alphabet:' line".into()))?;
    let letters = alphabet.letters().to_vec();
    let lookup = |m: &BTreeMap<u8, Q>, what: &str| -> Result<Vec<Q>> {
        letters
            .iter()
            .map(|a| {
                m.get(a).cloned().ok_or_else(|| {
                    perr(1, 1, format!("missing {what} for letter '{}'", *a as char))
                })
            })
            .collect()
    };
    match kind.as_deref().unwrap_or("bernoulli") {
        "bernoulli" => {
            let probs = lookup(&p, "'p'")?;
            TextModel::bernoulli(alphabet, probs)
        }
        _ => {
            let initial = lookup(&init, "'init'")?;
            let mut rows = Vec::new();
            for a in &letters {
                let mut row = Vec::new();
                for b in &letters {
                    row.push(trans.get(&(*a, *b)).cloned().ok_or_else(|| {
                        perr(
                            1,
                            1,
                            format!("missing 'trans {} {}'", *a as char, *b as char),
                        )
                    })?);
                }
                rows.push(row);
            }
            TextModel::markov(alphabet, initial, rows)
        }
    }
}
