//! The marked clump automaton: an Aho-Corasick style automaton on the
//! prefixes of the occurrence-plus-extension words, with transitions marked
//! by occurrences, new clumps and newly covered positions.
//!
//! Generating functions use the crate-wide variables (`u` for clumps, `t`
//! for covered positions). DOT output uses the conventional automaton letters instead: `t`
//! on transitions entering a new clump and `u^k` for `k` newly covered
//! positions.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::clump_gf::ClumpStatisticsGF;
use crate::correlation::right_extension_set;
use crate::error::{Error, Result};
use crate::languages::word_marker;
use crate::model::{Alphabet, ReducedWordSet, TextModel, Word};
use crate::symbolic::{bareiss_last, series_coefficients, Poly, RatFunc, SeriesTable, Var};

/// `X = {uᵢ·e : e ∈ {ε} ∪ ℰᵢⱼ for some j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSet {
    pub set: ReducedWordSet,
    /// Sorted by length, then lexicographically.
    pub words: Vec<Word>,
}

pub fn build_x_set(set: &ReducedWordSet) -> XSet {
    let mut words = BTreeSet::new();
    for ui in set.words() {
        words.insert((ui.len(), ui.clone()));
        for uj in set.words() {
            for e in right_extension_set(ui, uj).words() {
                let w = ui.concat(e);
                words.insert((w.len(), w));
            }
        }
    }
    XSet {
        set: set.clone(),
        words: words.into_iter().map(|(_, w)| w).collect(),
    }
}

/// Marks carried by every transition entering a state.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Marks {
    /// Indices of the words the state ends with.
    pub occurrences: Vec<usize>,
    /// The state is a first occurrence inside a clump.
    pub new_clump: bool,
    /// Positions newly covered, `|p| - |ℓ(p)|`.
    pub coverage: u32,
}

impl Marks {
    fn poly(&self, markers: &[Var], keep: &[Var]) -> Poly {
        let mut m = Poly::one();
        for &i in &self.occurrences {
            if keep.contains(&markers[i]) {
                m = &m * &Poly::var(markers[i]);
            }
        }
        if self.new_clump && keep.contains(&Var::U) {
            m = &m * &Poly::var(Var::U);
        }
        if keep.contains(&Var::T) {
            m = &m * &Poly::var(Var::T).pow(self.coverage);
        }
        m
    }
}

/// Complete deterministic automaton on `Pref(X)`. State 0 is `ε`.
#[derive(Clone, Debug)]
pub struct ClumpAutomaton {
    x: XSet,
    letters: Vec<u8>,
    states: Vec<Word>,
    delta: Vec<Vec<usize>>,
    marks: Vec<Marks>,
    in_x: Vec<bool>,
    letter_completed: bool,
}

fn ends_with_occurrence(p: &Word, set: &ReducedWordSet) -> Vec<usize> {
    set.words()
        .iter()
        .enumerate()
        .filter(|(_, u)| u.is_suffix_of(p))
        .map(|(i, _)| i)
        .collect()
}

pub fn build_clump_automaton(x: &XSet, alphabet: &Alphabet) -> Result<ClumpAutomaton> {
    build(x, alphabet, false)
}

/// Same automaton with every single letter added as a state, so that every
/// state reached after the first letter knows the last letter read. Needed
/// to weight transitions under a Markov model.
pub fn build_letter_completed_automaton(x: &XSet, alphabet: &Alphabet) -> Result<ClumpAutomaton> {
    build(x, alphabet, true)
}

fn build(x: &XSet, alphabet: &Alphabet, letter_completed: bool) -> Result<ClumpAutomaton> {
    for w in &x.words {
        alphabet.check(w)?;
    }
    let mut prefixes = BTreeSet::new();
    for w in &x.words {
        for l in 0..=w.len() {
            prefixes.insert((l, w.prefix(l)));
        }
    }
    if letter_completed {
        for &a in alphabet.letters() {
            prefixes.insert((1, Word::from_bytes(&[a])));
        }
    }
    let states: Vec<Word> = prefixes.into_iter().map(|(_, w)| w).collect();
    let index: HashMap<&Word, usize> = states.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let delta = states
        .iter()
        .map(|p| {
            alphabet
                .letters()
                .iter()
                .map(|&a| {
                    let mut pa = p.clone();
                    pa.push(a);
                    (0..=pa.len())
                        .find_map(|from| index.get(&pa.suffix_from(from)).copied())
                        .expect("ε is a state")
                })
                .collect()
        })
        .collect();

    let xs: BTreeSet<&Word> = x.words.iter().collect();
    let in_x = states.iter().map(|p| xs.contains(p)).collect();
    let minimal = |p: &Word| {
        xs.contains(p)
            && !x
                .words
                .iter()
                .any(|q| q.len() < p.len() && q.is_prefix_of(p))
    };
    let marks = states
        .iter()
        .map(|p| {
            let occurrences = ends_with_occurrence(p, &x.set);
            let coverage = if occurrences.is_empty() {
                0
            } else {
                let l = (1..p.len())
                    .rev()
                    .find(|&l| !ends_with_occurrence(&p.prefix(l), &x.set).is_empty())
                    .unwrap_or(0);
                (p.len() - l) as u32
            };
            Marks {
                occurrences,
                new_clump: minimal(p),
                coverage,
            }
        })
        .collect();

    Ok(ClumpAutomaton {
        x: x.clone(),
        letters: alphabet.letters().to_vec(),
        states,
        delta,
        marks,
        in_x,
        letter_completed,
    })
}

impl ClumpAutomaton {
    pub fn x_set(&self) -> &XSet {
        &self.x
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, i: usize) -> &Word {
        &self.states[i]
    }

    pub fn states(&self) -> &[Word] {
        &self.states
    }

    pub fn is_letter_completed(&self) -> bool {
        self.letter_completed
    }

    /// Target of the transition from `state` on the `letter`-th letter.
    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.delta[state][letter]
    }

    /// Marks carried by every transition entering `state`.
    pub fn marks(&self, state: usize) -> &Marks {
        &self.marks[state]
    }

    /// Final states `T = X ∖ X𝒜⁺`.
    pub fn final_states(&self) -> Vec<usize> {
        (0..self.states.len())
            .filter(|&i| self.marks[i].new_clump)
            .collect()
    }

    pub fn is_in_x(&self, state: usize) -> bool {
        self.in_x[state]
    }

    /// Occurrence markers: `x` for a single word, `x1..xr` for a set.
    pub fn markers(&self) -> Vec<Var> {
        let r = self.x.set.len();
        if r == 1 {
            vec![Var::X]
        } else {
            (0..r).map(word_marker).collect()
        }
    }

    fn for_model(&self, model: &TextModel) -> Result<std::borrow::Cow<'_, ClumpAutomaton>> {
        if model.alphabet().letters() != self.letters.as_slice() {
            return Err(Error::Domain(
                "model alphabet differs from the automaton's".into(),
            ));
        }
        if model.is_bernoulli() || self.letter_completed {
            Ok(std::borrow::Cow::Borrowed(self))
        } else {
            Ok(std::borrow::Cow::Owned(build_letter_completed_automaton(
                &self.x,
                model.alphabet(),
            )?))
        }
    }

    /// Weighted transitions `(from, to, weight)` with `z` and the kept marks.
    fn weighted_edges(&self, model: &TextModel, keep: &[Var]) -> Result<Vec<(usize, usize, Poly)>> {
        let markers = self.markers();
        let z = Poly::var(Var::Z);
        let mut edges = Vec::with_capacity(self.states.len() * self.letters.len());
        for (p, row) in self.delta.iter().enumerate() {
            let prev = self.states[p].last();
            for (a, &q) in row.iter().enumerate() {
                let prob = model.step_prob(prev, self.letters[a])?;
                if prob == crate::Q::from_integer(0.into()) {
                    continue;
                }
                let w = (&z * &self.marks[q].poly(&markers, keep)).scale(&prob);
                edges.push((p, q, w));
            }
        }
        Ok(edges)
    }

    /// `e_ε (I - T)^{-1} b` for the weighted transition matrix `T`.
    fn solve_from_start(&self, edges: &[(usize, usize, Poly)], rhs: &[bool]) -> Result<RatFunc> {
        // ε goes last so that the last unknown is the one we need.
        let n = self.states.len();
        let pos = |s: usize| if s == 0 { n - 1 } else { s - 1 };
        let mut a = vec![vec![Poly::zero(); n]; n];
        for s in 0..n {
            a[pos(s)][pos(s)] = Poly::one();
        }
        for (p, q, w) in edges {
            let e = &mut a[pos(*p)][pos(*q)];
            *e = &*e - w;
        }
        let mut b = vec![Poly::zero(); n];
        for s in 0..n {
            if rhs[s] {
                b[pos(s)] = Poly::one();
            }
        }
        let (num, det) = bareiss_last(a, b)?;
        RatFunc::new(num, det)
    }
}

/// Generating function of texts with every mark: `z` per letter, `x`/`xᵢ`
/// per occurrence, `u` per clump and `t` per covered position. Sums over
/// all states, so it describes whole texts.
pub fn automaton_gf(a: &ClumpAutomaton, model: &TextModel) -> Result<ClumpStatisticsGF> {
    let mut keep = a.markers();
    keep.extend([Var::U, Var::T]);
    automaton_gf_marked(a, model, &keep)
}

/// [`automaton_gf`] with every mark outside `keep` set to 1. Cheaper than
/// specializing the full function.
pub fn automaton_gf_marked(
    a: &ClumpAutomaton,
    model: &TextModel,
    keep: &[Var],
) -> Result<ClumpStatisticsGF> {
    let a = a.for_model(model)?;
    let edges = a.weighted_edges(model, keep)?;
    let g = a.solve_from_start(&edges, &vec![true; a.num_states()])?;
    Ok(ClumpStatisticsGF {
        markers: a.markers(),
        g,
    })
}

/// Texts that end with the first occurrence of a word of the set and have
/// no earlier occurrence: reading stops at the first final state reached.
/// For a single word this is the right language ℛ.
pub fn accepted_language_gf(a: &ClumpAutomaton, model: &TextModel) -> Result<RatFunc> {
    let a = a.for_model(model)?;
    let finals: Vec<bool> = (0..a.num_states()).map(|s| a.marks[s].new_clump).collect();
    let edges: Vec<_> = a
        .weighted_edges(model, &[])?
        .into_iter()
        .filter(|(p, _, _)| a.marks[*p].occurrences.is_empty())
        .collect();
    // Texts ending at a final state on their last letter: y = (I - T₀)^{-1} T_T 𝟙.
    let n = a.num_states();
    let mut hits = vec![Poly::zero(); n];
    for (p, q, w) in &edges {
        if finals[*q] {
            hits[*p] = &hits[*p] + w;
        }
    }
    let inner: Vec<_> = edges.into_iter().filter(|(_, q, _)| !finals[*q]).collect();
    let pos = |s: usize| if s == 0 { n - 1 } else { s - 1 };
    let mut m = vec![vec![Poly::zero(); n]; n];
    for s in 0..n {
        m[pos(s)][pos(s)] = Poly::one();
    }
    for (p, q, w) in &inner {
        let e = &mut m[pos(*p)][pos(*q)];
        *e = &*e - w;
    }
    let mut b = vec![Poly::zero(); n];
    for s in 0..n {
        b[pos(s)] = hits[s].clone();
    }
    let (num, det) = bareiss_last(m, b)?;
    RatFunc::new(num, det)
}

/// Coefficients `z^0..z^horizon` by iterating the transfer matrix, keeping
/// only the marks in `keep`.
pub fn automaton_series(
    a: &ClumpAutomaton,
    model: &TextModel,
    keep: &[Var],
    horizon: usize,
) -> Result<SeriesTable> {
    let a = a.for_model(model)?;
    let edges: Vec<(usize, usize, Poly)> = a
        .weighted_edges(model, keep)?
        .into_iter()
        .map(|(p, q, w)| (p, q, w.coeffs_in(Var::Z).swap_remove(1)))
        .collect();
    let n = a.num_states();
    let mut v = vec![Poly::zero(); n];
    v[0] = Poly::one();
    let mut coeffs = Vec::with_capacity(horizon + 1);
    for step in 0..=horizon {
        coeffs.push(v.iter().fold(Poly::zero(), |acc, p| &acc + p));
        if step == horizon {
            break;
        }
        let mut next = vec![Poly::zero(); n];
        for (p, q, w) in &edges {
            if !v[*p].is_zero() {
                next[*q] = &next[*q] + &(&v[*p] * w);
            }
        }
        v = next;
    }
    Ok(SeriesTable {
        var: Var::Z,
        coeffs,
        truncated: false,
    })
}

/// Series of an automaton generating function, for comparisons.
pub fn automaton_gf_series(
    a: &ClumpAutomaton,
    model: &TextModel,
    horizon: usize,
) -> Result<SeriesTable> {
    series_coefficients(&automaton_gf(a, model)?.g, horizon)
}

/// Statistics read off a run of the automaton.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransducerTally {
    pub occurrences: Vec<u32>,
    pub clumps: u32,
    pub coverage: u32,
}

impl TransducerTally {
    pub fn total_occurrences(&self) -> u32 {
        self.occurrences.iter().sum()
    }
}

impl From<&crate::oracle::Tally> for TransducerTally {
    fn from(t: &crate::oracle::Tally) -> Self {
        TransducerTally {
            occurrences: t.occurrences.clone(),
            clumps: t.clumps,
            coverage: t.coverage,
        }
    }
}

pub fn run_transducer(a: &ClumpAutomaton, text: &Word) -> Result<TransducerTally> {
    let mut tally = TransducerTally {
        occurrences: vec![0; a.x.set.len()],
        ..TransducerTally::default()
    };
    let mut s = 0;
    for &b in text.as_bytes() {
        let l =
            a.letters.iter().position(|&c| c == b).ok_or_else(|| {
                Error::Domain(format!("letter {:?} not in the alphabet", b as char))
            })?;
        s = a.delta[s][l];
        let m = &a.marks[s];
        for &i in &m.occurrences {
            tally.occurrences[i] += 1;
        }
        tally.clumps += m.new_clump as u32;
        tally.coverage += m.coverage;
    }
    Ok(tally)
}

fn dot_label(a: &ClumpAutomaton, letter: u8, m: &Marks) -> String {
    let mut marks = Vec::new();
    let r = a.x.set.len();
    for &i in &m.occurrences {
        marks.push(if r == 1 {
            "x".to_string()
        } else {
            format!("x{}", i + 1)
        });
    }
    if m.new_clump {
        marks.push("t".into());
    }
    match m.coverage {
        0 => {}
        1 => marks.push("u".into()),
        k => marks.push(format!("u^{k}")),
    }
    if marks.is_empty() {
        (letter as char).to_string()
    } else {
        format!("{} [{}]", letter as char, marks.join(" "))
    }
}

/// Graphviz rendering. States are labeled by their word (`<eps>` for the
/// initial state), `+` flags states ending with an occurrence and final
/// states are double circles.
pub fn export_dot(a: &ClumpAutomaton) -> String {
    let mut out =
        String::from("digraph clump_automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for (i, w) in a.states.iter().enumerate() {
        let mut label = if w.is_empty() {
            "<eps>".to_string()
        } else {
            String::from_utf8_lossy(w.as_bytes()).into_owned()
        };
        if !a.marks[i].occurrences.is_empty() {
            label.push_str(" +");
        }
        let shape = if a.marks[i].new_clump {
            ", shape=doublecircle"
        } else {
            ""
        };
        let _ = writeln!(out, "  s{i} [label=\"{label}\"{shape}];");
    }
    for (p, row) in a.delta.iter().enumerate() {
        for (l, &q) in row.iter().enumerate() {
            let _ = writeln!(
                out,
                "  s{p} -> s{q} [label=\"{}\"];",
                dot_label(a, a.letters[l], &a.marks[q])
            );
        }
    }
    out.push_str("}\n");
    out
}
