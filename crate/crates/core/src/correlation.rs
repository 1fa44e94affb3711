//! Correlation sets, right extension sets and the prefix codes that generate
//! clump extensions unambiguously.
//!
//! All sets are kept sorted by (length, letters) so printing and comparison
//! are deterministic.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::model::{ReducedWordSet, TextModel, Word};
use crate::symbolic::{Poly, Var};

fn sort_words(words: &mut Vec<Word>) {
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    words.dedup();
}

/// Extensions `e` with `source·e = e'·target`, `0 < |e| < |target|`, plus
/// ε when `source == target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationSet {
    pub source: Word,
    pub target: Word,
    words: Vec<Word>,
}

impl CorrelationSet {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains_empty(&self) -> bool {
        self.words.first().is_some_and(Word::is_empty)
    }

    /// The set without ε.
    pub fn nonempty(&self) -> Vec<Word> {
        self.words
            .iter()
            .filter(|w| !w.is_empty())
            .cloned()
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Σ π_e z^{|e|} with ε contributing 1.
    pub fn polynomial(&self, model: &TextModel) -> Result<Poly> {
        weighted_polynomial(&self.words, model, Var::Z)
    }
}

/// The right extension set ℰ of a pair: as the correlation set but the
/// overlap must leave a nonempty `e'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSet {
    pub source: Word,
    pub target: Word,
    words: Vec<Word>,
}

impl ExtensionSet {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// A finite prefix code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixCode {
    words: Vec<Word>,
}

impl PrefixCode {
    pub fn new(mut words: Vec<Word>) -> Self {
        sort_words(&mut words);
        PrefixCode { words }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_prefix_free(&self) -> bool {
        self.words.iter().enumerate().all(|(i, a)| {
            self.words
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_prefix_of(b))
        })
    }

    /// Σ π_κ v^{|κ|} over the code.
    pub fn polynomial(&self, model: &TextModel, var: Var) -> Result<Poly> {
        weighted_polynomial(&self.words, model, var)
    }
}

/// Σ π_e var^{|e|} with Bernoulli letter weights.
pub fn weighted_polynomial(words: &[Word], model: &TextModel, var: Var) -> Result<Poly> {
    let mut p = Poly::zero();
    for w in words {
        let weight = model.bernoulli_weight(w)?;
        p = &p + &Poly::monomial(weight, &[(var, w.len() as u32)]);
    }
    Ok(p)
}

/// Overlap lengths `k` (suffix of `h1` equal to a prefix of `h2`) in
/// `1..=max_k`.
fn overlaps<'a>(h1: &'a Word, h2: &'a Word, max_k: usize) -> impl Iterator<Item = usize> + 'a {
    let a = h1.as_bytes();
    let b = h2.as_bytes();
    (1..=max_k).filter(move |&k| a[a.len() - k..] == b[..k])
}

pub fn correlation_set(h1: &Word, h2: &Word) -> CorrelationSet {
    let max_k = h1.len().min(h2.len().saturating_sub(1));
    let mut words: Vec<Word> = overlaps(h1, h2, max_k).map(|k| h2.suffix_from(k)).collect();
    if h1 == h2 {
        words.push(Word::empty());
    }
    sort_words(&mut words);
    CorrelationSet {
        source: h1.clone(),
        target: h2.clone(),
        words,
    }
}

pub fn autocorrelation_set(w: &Word) -> CorrelationSet {
    correlation_set(w, w)
}

pub fn right_extension_set(h1: &Word, h2: &Word) -> ExtensionSet {
    let max_k = h1.len().saturating_sub(1).min(h2.len().saturating_sub(1));
    let mut words: Vec<Word> = overlaps(h1, h2, max_k).map(|k| h2.suffix_from(k)).collect();
    sort_words(&mut words);
    ExtensionSet {
        source: h1.clone(),
        target: h2.clone(),
        words,
    }
}

/// Keeps the words of `candidates` that have no proper prefix in `blockers`.
fn prefix_filter(candidates: &[Word], blockers: &[Word]) -> Vec<Word> {
    candidates
        .iter()
        .filter(|c| {
            !blockers
                .iter()
                .any(|b| !b.is_empty() && b.len() < c.len() && b.is_prefix_of(c))
        })
        .cloned()
        .collect()
}

/// 𝒞∘ ∖ 𝒞∘𝒜⁺ by direct filtering.
pub fn prefix_code(c: &CorrelationSet) -> PrefixCode {
    let nonempty = c.nonempty();
    PrefixCode::new(prefix_filter(&nonempty, &nonempty))
}

#[derive(Default)]
struct TrieNode {
    children: BTreeMap<u8, usize>,
    terminal: bool,
}

/// Builds the same code by inserting the shift suffixes into a trie in the
/// order the shifts produce them (shortest first). A suffix whose path runs
/// into a stored word is dropped; a stored word that extends a new suffix is
/// pruned.
pub fn prefix_code_by_trie(c: &CorrelationSet) -> PrefixCode {
    let mut nodes = vec![TrieNode::default()];
    let mut suffixes = c.nonempty();
    suffixes.sort_by_key(Word::len);

    'insert: for s in &suffixes {
        let mut at = 0;
        for &b in s.as_bytes() {
            if nodes[at].terminal {
                continue 'insert;
            }
            at = match nodes[at].children.get(&b) {
                Some(&next) => next,
                None => {
                    nodes.push(TrieNode::default());
                    let id = nodes.len() - 1;
                    nodes[at].children.insert(b, id);
                    id
                }
            };
        }
        if nodes[at].terminal {
            continue;
        }
        nodes[at].terminal = true;
        // The new word becomes a leaf: anything stored below it has it as a
        // proper prefix.
        nodes[at].children.clear();
    }

    let mut out = Vec::new();
    let mut stack = vec![(0usize, Word::empty())];
    while let Some((id, w)) = stack.pop() {
        if nodes[id].terminal {
            out.push(w.clone());
            continue;
        }
        for (&b, &child) in &nodes[id].children {
            let mut next = w.clone();
            next.push(b);
            stack.push((child, next));
        }
    }
    PrefixCode::new(out)
}

/// Number of ways `w` factors over `code` (1 for unique decodability).
pub fn count_factorizations(w: &Word, code: &[Word]) -> u64 {
    let bytes = w.as_bytes();
    let mut ways = vec![0u64; bytes.len() + 1];
    ways[0] = 1;
    for end in 1..=bytes.len() {
        for k in code {
            let l = k.len();
            if l > 0 && l <= end && &bytes[end - l..end] == k.as_bytes() {
                ways[end] += ways[end - l];
            }
        }
    }
    ways[bytes.len()]
}

/// Square matrix of words indexed by a reduced set.
pub type WordMatrix<T> = Vec<Vec<T>>;

pub fn correlation_matrix(set: &ReducedWordSet) -> WordMatrix<CorrelationSet> {
    let w = set.words();
    w.iter()
        .map(|a| w.iter().map(|b| correlation_set(a, b)).collect())
        .collect()
}

pub fn extension_matrix(set: &ReducedWordSet) -> WordMatrix<ExtensionSet> {
    let w = set.words();
    w.iter()
        .map(|a| w.iter().map(|b| right_extension_set(a, b)).collect())
        .collect()
}

/// Entry (i, j) is the prefix-free filter of 𝒞ᵢⱼ (𝒞∘ᵢᵢ on the diagonal).
pub fn prefix_code_matrix(set: &ReducedWordSet) -> WordMatrix<PrefixCode> {
    correlation_matrix(set)
        .iter()
        .map(|row| row.iter().map(prefix_code).collect())
        .collect()
}

/// Entry (i, j) holds the extensions `e ∈ 𝒞ᵢⱼ∖{ε}` such that `uᵢ·e` has no
/// occurrence of any word of the set strictly between the leading `uᵢ` and
/// the trailing `uⱼ`: no proper prefix of `e` lies in any 𝒞ᵢₖ of the same
/// row. These are the steps from one occurrence to the next one inside a
/// clump. For a single word this is the ordinary prefix code.
pub fn minimal_extension_matrix(set: &ReducedWordSet) -> WordMatrix<PrefixCode> {
    correlation_matrix(set)
        .iter()
        .map(|row| {
            let blockers: Vec<Word> = row.iter().flat_map(CorrelationSet::nonempty).collect();
            row.iter()
                .map(|c| PrefixCode::new(prefix_filter(&c.nonempty(), &blockers)))
                .collect()
        })
        .collect()
}
