//! Ground-truth clump semantics on concrete texts: occurrence scanning,
//! clump detection, exhaustive exact distributions and seeded sampling.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ReducedWordSet, TextModel, Word};
use crate::Q;

/// Default cap on the number of texts an exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// An occurrence of word `word` at 1-based positions `start..=end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub word: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clump {
    pub occurrences: Vec<Occurrence>,
    pub start: usize,
    pub end: usize,
}

impl Clump {
    pub fn span_len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn len(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty()
    }
}

/// All occurrences, sorted by start then word index.
pub fn find_occurrences(text: &Word, set: &ReducedWordSet) -> Vec<Occurrence> {
    let t = text.as_bytes();
    let mut out = Vec::new();
    for s in 0..t.len() {
        for (i, w) in set.words().iter().enumerate() {
            let w = w.as_bytes();
            if t[s..].starts_with(w) {
                out.push(Occurrence {
                    word: i,
                    start: s + 1,
                    end: s + w.len(),
                });
            }
        }
    }
    out
}

/// Chains occurrences: an occurrence joins the current clump when it shares
/// at least one position with it.
pub fn detect_clumps(text: &Word, set: &ReducedWordSet) -> Vec<Clump> {
    let mut clumps: Vec<Clump> = Vec::new();
    for occ in find_occurrences(text, set) {
        match clumps.last_mut() {
            Some(c) if occ.start <= c.end => {
                c.end = c.end.max(occ.end);
                c.occurrences.push(occ);
            }
            _ => clumps.push(Clump {
                occurrences: vec![occ],
                start: occ.start,
                end: occ.end,
            }),
        }
    }
    clumps
}

/// Checks a clump against the definition directly: every pair of
/// consecutive span positions lies inside one of its occurrences, all its
/// occurrences lie inside the span, and no other occurrence of the text
/// overlaps the span.
pub fn satisfies_definition(clump: &Clump, all: &[Occurrence]) -> bool {
    if clump.occurrences.is_empty() {
        return false;
    }
    let inside = |o: &Occurrence| o.start >= clump.start && o.end <= clump.end;
    if !clump.occurrences.iter().all(inside) {
        return false;
    }
    if clump.occurrences.iter().map(|o| o.start).min() != Some(clump.start)
        || clump.occurrences.iter().map(|o| o.end).max() != Some(clump.end)
    {
        return false;
    }
    let covered_pair = |i: usize| clump.occurrences.iter().any(|o| o.start <= i && i < o.end);
    if !(clump.start..clump.end).all(covered_pair) {
        return false;
    }
    all.iter()
        .filter(|o| !clump.occurrences.contains(o))
        .all(|o| o.end < clump.start || o.start > clump.end)
}

/// Per-text statistics read off the clump decomposition.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tally {
    /// Occurrence count of each word of the set.
    pub occurrences: Vec<u32>,
    pub clumps: u32,
    /// Total length covered by clumps.
    pub coverage: u32,
    /// `clump_sizes[k]` = number of clumps with exactly `k` occurrences.
    pub clump_sizes: Vec<u32>,
}

impl Tally {
    pub fn total_occurrences(&self) -> u32 {
        self.occurrences.iter().sum()
    }

    pub fn kclumps(&self, k: usize) -> u32 {
        self.clump_sizes.get(k).copied().unwrap_or(0)
    }
}

pub fn tally(text: &Word, set: &ReducedWordSet) -> Tally {
    let clumps = detect_clumps(text, set);
    let mut t = Tally {
        occurrences: vec![0; set.len()],
        clumps: clumps.len() as u32,
        ..Tally::default()
    };
    for c in &clumps {
        t.coverage += c.span_len() as u32;
        if t.clump_sizes.len() <= c.len() {
            t.clump_sizes.resize(c.len() + 1, 0);
        }
        t.clump_sizes[c.len()] += 1;
        for o in &c.occurrences {
            t.occurrences[o.word] += 1;
        }
    }
    t
}

/// The statistic an exhaustive or sampled table tallies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    ClumpCount,
    KClumpCount(usize),
    Occurrences,
    OccurrencesOf(usize),
    Coverage,
}

impl Statistic {
    pub fn of(self, t: &Tally) -> u32 {
        match self {
            Statistic::ClumpCount => t.clumps,
            Statistic::KClumpCount(k) => t.kclumps(k),
            Statistic::Occurrences => t.total_occurrences(),
            Statistic::OccurrencesOf(i) => t.occurrences[i],
            Statistic::Coverage => t.coverage,
        }
    }

    pub fn name(self) -> String {
        match self {
            Statistic::ClumpCount => "clump_count".into(),
            Statistic::KClumpCount(k) => format!("kclump_count({k})"),
            Statistic::Occurrences => "occurrences".into(),
            Statistic::OccurrencesOf(i) => format!("occurrences_of({i})"),
            Statistic::Coverage => "coverage".into(),
        }
    }
}

/// Exact law of one statistic at text length `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionTable {
    pub n: usize,
    pub statistic: String,
    pub probs: BTreeMap<u32, Q>,
}

impl DistributionTable {
    pub fn get(&self, value: u32) -> Q {
        self.probs.get(&value).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total(&self) -> Q {
        self.probs.values().sum()
    }

    pub fn mean(&self) -> Q {
        self.probs
            .iter()
            .map(|(k, p)| p * Q::from_integer((*k).into()))
            .sum()
    }

    /// Probabilities indexed by value, zero-filled.
    pub fn to_vec(&self) -> Vec<Q> {
        let len = self.probs.keys().next_back().map_or(1, |&k| k as usize + 1);
        (0..len).map(|k| self.get(k as u32)).collect()
    }
}

/// Joint law of the full tally at text length `n`.
pub type JointTable = BTreeMap<Tally, Q>;

pub fn project(joint: &JointTable, n: usize, stat: Statistic) -> DistributionTable {
    let mut probs: BTreeMap<u32, Q> = BTreeMap::new();
    for (t, p) in joint {
        *probs.entry(stat.of(t)).or_insert_with(Q::zero) += p;
    }
    probs.retain(|_, p| !p.is_zero());
    DistributionTable {
        n,
        statistic: stat.name(),
        probs,
    }
}

fn check_budget(model: &TextModel, n: usize, budget: u128) -> Result<()> {
    let k = model.alphabet().len() as u128;
    let texts = (0..n)
        .try_fold(1u128, |acc, _| acc.checked_mul(k))
        .unwrap_or(u128::MAX);
    if texts > budget {
        return Err(Error::BudgetExceeded { texts, budget });
    }
    Ok(())
}

fn enumerate_into(
    model: &TextModel,
    set: &ReducedWordSet,
    n: usize,
    buf: &mut Vec<u8>,
    prob: Q,
    out: &mut JointTable,
) -> Result<()> {
    if prob.is_zero() {
        return Ok(());
    }
    if buf.len() == n {
        let t = tally(&Word::from_bytes(buf), set);
        *out.entry(t).or_insert_with(Q::zero) += prob;
        return Ok(());
    }
    for &b in model.alphabet().letters() {
        let p = &prob * model.step_prob(buf.last().copied(), b)?;
        buf.push(b);
        enumerate_into(model, set, n, buf, p, out)?;
        buf.pop();
    }
    Ok(())
}

fn merge(mut a: JointTable, b: JointTable) -> JointTable {
    for (k, v) in b {
        *a.entry(k).or_insert_with(Q::zero) += v;
    }
    a
}

/// Exact joint law by enumerating all texts of length `n`.
pub fn exhaustive_joint(
    model: &TextModel,
    set: &ReducedWordSet,
    n: usize,
    budget: u128,
) -> Result<JointTable> {
    check_budget(model, n, budget)?;
    let mut out = JointTable::new();
    enumerate_into(
        model,
        set,
        n,
        &mut Vec::with_capacity(n),
        Q::from_integer(1.into()),
        &mut out,
    )?;
    Ok(out)
}

/// Same table as [`exhaustive_joint`], enumerating prefix-partitioned slices
/// in parallel.
pub fn exhaustive_joint_parallel(
    model: &TextModel,
    set: &ReducedWordSet,
    n: usize,
    budget: u128,
) -> Result<JointTable> {
    check_budget(model, n, budget)?;
    let depth = n.min(4);
    let prefixes: Vec<Word> = crate::model::enumerate_texts(model.alphabet(), depth).collect();
    let parts: Vec<Result<JointTable>> = prefixes
        .par_iter()
        .map(|p| {
            let mut out = JointTable::new();
            let prob = model.word_probability(p)?;
            let mut buf = p.as_bytes().to_vec();
            enumerate_into(model, set, n, &mut buf, prob, &mut out)?;
            Ok(out)
        })
        .collect();
    parts
        .into_iter()
        .try_fold(JointTable::new(), |acc, p| Ok(merge(acc, p?)))
}

pub fn exhaustive_distribution(
    model: &TextModel,
    set: &ReducedWordSet,
    n: usize,
    stat: Statistic,
    budget: u128,
) -> Result<DistributionTable> {
    Ok(project(&exhaustive_joint(model, set, n, budget)?, n, stat))
}

/// Float sampler for a text model. ChaCha8 seeded with `seed`, one stream
/// per chunk of samples, so results do not depend on thread scheduling.
pub struct TextSampler {
    letters: Vec<u8>,
    /// Cumulative distributions: row 0 is the first letter, row 1 + i
    /// follows letter i.
    cdf: Vec<Vec<f64>>,
}

impl TextSampler {
    pub fn new(model: &TextModel) -> Result<Self> {
        let letters = model.alphabet().letters().to_vec();
        let row = |prev: Option<u8>| -> Result<Vec<f64>> {
            let mut acc = 0.0;
            let mut out = Vec::with_capacity(letters.len());
            for &b in &letters {
                acc += model.step_prob(prev, b)?.to_f64().unwrap_or(0.0);
                out.push(acc);
            }
            if let Some(last) = out.last_mut() {
                *last = f64::INFINITY;
            }
            Ok(out)
        };
        let mut cdf = vec![row(None)?];
        for &a in &letters {
            cdf.push(row(Some(a))?);
        }
        Ok(TextSampler { letters, cdf })
    }

    pub fn sample_into<R: Rng>(&self, rng: &mut R, n: usize, buf: &mut Vec<u8>) {
        buf.clear();
        let mut state = 0usize;
        for _ in 0..n {
            let r: f64 = rng.gen();
            let i = self.cdf[state]
                .iter()
                .position(|&c| r < c)
                .unwrap_or(self.letters.len() - 1);
            buf.push(self.letters[i]);
            state = i + 1;
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R, n: usize) -> Word {
        let mut buf = Vec::with_capacity(n);
        self.sample_into(rng, n, &mut buf);
        Word::from_bytes(&buf)
    }
}

pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// `count` reproducible texts of length `n`.
pub fn sample_texts(model: &TextModel, n: usize, count: usize, seed: u64) -> Result<Vec<Word>> {
    let sampler = TextSampler::new(model)?;
    let mut rng = chunk_rng(seed, 0);
    Ok((0..count).map(|_| sampler.sample(&mut rng, n)).collect())
}

const CHUNK: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloTable {
    pub n: usize,
    pub samples: usize,
    pub statistic: String,
    pub counts: BTreeMap<u32, u64>,
}

impl MonteCarloTable {
    pub fn frequency(&self, value: u32) -> f64 {
        *self.counts.get(&value).unwrap_or(&0) as f64 / self.samples as f64
    }

    /// Binomial standard error of [`frequency`](Self::frequency).
    pub fn standard_error(&self, value: u32) -> f64 {
        let p = self.frequency(value);
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }

    pub fn mean(&self) -> f64 {
        self.counts
            .iter()
            .map(|(&k, &c)| k as f64 * c as f64)
            .sum::<f64>()
            / self.samples as f64
    }

    pub fn mean_standard_error(&self) -> f64 {
        let m = self.mean();
        let var = self
            .counts
            .iter()
            .map(|(&k, &c)| (k as f64 - m).powi(2) * c as f64)
            .sum::<f64>()
            / (self.samples as f64 - 1.0).max(1.0);
        (var / self.samples as f64).sqrt()
    }
}

/// Empirical law of `stat` over `samples` random texts of length `n`.
pub fn monte_carlo(
    model: &TextModel,
    set: &ReducedWordSet,
    n: usize,
    stat: Statistic,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloTable> {
    let sampler = TextSampler::new(model)?;
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<BTreeMap<u32, u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c as u64);
            let mut counts = BTreeMap::new();
            let mut buf = Vec::with_capacity(n);
            let m = CHUNK.min(samples - c * CHUNK);
            for _ in 0..m {
                sampler.sample_into(&mut rng, n, &mut buf);
                let t = tally(&Word::from_bytes(&buf), set);
                *counts.entry(stat.of(&t)).or_insert(0) += 1;
            }
            counts
        })
        .collect();
    let mut counts = BTreeMap::new();
    for p in parts {
        for (k, v) in p {
            *counts.entry(k).or_insert(0) += v;
        }
    }
    Ok(MonteCarloTable {
        n,
        samples,
        statistic: stat.name(),
        counts,
    })
}

/// Sampled growth of the clump count, using prefixes of one text per sample
/// so that increments are coupled.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    pub n: usize,
    pub samples: usize,
    /// Mean of `O_n - O_{n-1}`.
    pub mean_slope: f64,
    pub mean_slope_se: f64,
    /// `(Var O_n - Var O_{n/2}) / (n - n/2)`.
    pub variance_slope: f64,
    pub variance_slope_se: f64,
}

/// Clump counts of the prefixes of `text` with the given lengths. For a
/// reduced set, occurrence ends increase with starts, so the clumps of a
/// prefix are those formed by the occurrences that end inside it.
pub fn prefix_clump_counts(text: &[u8], set: &ReducedWordSet, lengths: &[usize]) -> Vec<u32> {
    let words: Vec<&[u8]> = set.words().iter().map(Word::as_bytes).collect();
    let mut out = vec![0u32; lengths.len()];
    let mut clumps = 0u32;
    let mut last_end = 0usize;
    let mut next = 0usize;
    let mut sorted: Vec<(usize, usize)> = lengths
        .iter()
        .copied()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    sorted.sort();
    while next < sorted.len() && sorted[next].0 == 0 {
        next += 1;
    }
    for end in 1..=text.len() {
        for w in &words {
            if end >= w.len() && &text[end - w.len()..end] == *w {
                let start = end + 1 - w.len();
                if last_end == 0 || start > last_end {
                    clumps += 1;
                }
                last_end = end;
            }
        }
        while next < sorted.len() && sorted[next].0 == end {
            out[sorted[next].1] = clumps;
            next += 1;
        }
    }
    while next < sorted.len() {
        out[sorted[next].1] = clumps;
        next += 1;
    }
    out
}

pub fn monte_carlo_growth(
    model: &TextModel,
    set: &ReducedWordSet,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<GrowthEstimate> {
    if n < 4 || samples < 2 {
        return Err(Error::Domain(
            "growth estimate needs n >= 4 and at least 2 samples".into(),
        ));
    }
    let sampler = TextSampler::new(model)?;
    let half = n / 2;
    let lengths = [half, n - 1, n];
    let chunks = samples.div_ceil(CHUNK);
    // Per-sample triples (O_half, O_{n-1}, O_n).
    let parts: Vec<Vec<[u32; 3]>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c as u64);
            let mut buf = Vec::with_capacity(n);
            let m = CHUNK.min(samples - c * CHUNK);
            (0..m)
                .map(|_| {
                    sampler.sample_into(&mut rng, n, &mut buf);
                    let v = prefix_clump_counts(&buf, set, &lengths);
                    [v[0], v[1], v[2]]
                })
                .collect()
        })
        .collect();
    let rows: Vec<[u32; 3]> = parts.into_iter().flatten().collect();
    let s = rows.len() as f64;
    let mean = |f: &dyn Fn(&[u32; 3]) -> f64| rows.iter().map(f).sum::<f64>() / s;
    let sd = |f: &dyn Fn(&[u32; 3]) -> f64, m: f64| {
        (rows.iter().map(|r| (f(r) - m).powi(2)).sum::<f64>() / (s - 1.0)).sqrt()
    };
    let inc = |r: &[u32; 3]| (r[2] - r[1]) as f64;
    let mean_slope = mean(&inc);
    let mean_slope_se = sd(&inc, mean_slope) / s.sqrt();
    let mh = mean(&|r| r[0] as f64);
    let mn = mean(&|r| r[2] as f64);
    // Influence values of the difference of the two sample variances.
    let infl = |r: &[u32; 3]| (r[2] as f64 - mn).powi(2) - (r[0] as f64 - mh).powi(2);
    let dvar = mean(&infl) * s / (s - 1.0);
    let width = (n - half) as f64;
    let se = sd(&infl, mean(&infl)) / s.sqrt();
    Ok(GrowthEstimate {
        n,
        samples: rows.len(),
        mean_slope,
        mean_slope_se,
        variance_slope: dvar / width,
        variance_slope_se: se / width,
    })
}
