//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Two checks are known to fail and are reported rather than hidden; the
//! target exits nonzero only on an unexpected outcome:
//! - criterion 1, `𝒦₁₂ = a·𝒦₂₂` for `{abab, baba}`: the prefix-free filter of
//!   `𝒞₁₂ = {a, aba}` is `{a}`, while `a·𝒦₂₂ = {aba}`. The identity holds for
//!   the correlation sets (`𝒞₁₂ = a·𝒞₂₂`), not for the codes.
//! - criterion 6 with the published approximation of `P(k clumps)`: it is
//!   the pole's leading term multiplied by `ρ^k P(ρ) = ρ^k (ρ - 1)`, which
//!   is about 1/330 for `abababab`. The leading term itself meets the
//!   criterion and is reported alongside.

use std::collections::BTreeSet;
use std::time::Instant;

use clumpstat::asymptotics::{
    clump_count_coefficient, growth_rates, poisson_approximation, poisson_tail_gf,
};
use clumpstat::automaton::{
    automaton_gf_marked, build_clump_automaton, build_x_set, run_transducer, TransducerTally,
};
use clumpstat::clump_gf::{
    clump_count_gf, clump_statistics_gf, clump_text_gf, expected_clumps_gf, kclump_gf_any,
    multi_word_clump_gf,
};
use clumpstat::correlation::{
    autocorrelation_set, correlation_set, extension_matrix, prefix_code, prefix_code_matrix,
};
use clumpstat::languages::{occurrence_gf, word_marker};
use clumpstat::model::enumerate_texts;
use clumpstat::oracle::{
    detect_clumps, exhaustive_joint, find_occurrences, monte_carlo_growth, project, sample_texts,
    satisfies_definition, tally, Statistic, DEFAULT_BUDGET,
};
use clumpstat::symbolic::{scalar_series, series_coefficients, RatFunc, Var};
use clumpstat::{Alphabet, ReducedWordSet, TextModel, Word, Q};

type Check = Result<String, String>;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn uniform() -> TextModel {
    TextModel::uniform(Alphabet::binary())
}

fn third() -> TextModel {
    TextModel::bernoulli(Alphabet::binary(), vec![q(1, 3), q(2, 3)]).unwrap()
}

fn models() -> Vec<(&'static str, TextModel)> {
    vec![("uniform", uniform()), ("p(a)=1/3", third())]
}

const SINGLE: [&str; 5] = ["aa", "aaa", "aba", "abaabaaba", "bababa"];
const SETS: [&str; 2] = ["aba,bba", "aabaa,baab"];

fn set(s: &str) -> ReducedWordSet {
    ReducedWordSet::parse(s).unwrap()
}

fn words(ws: &[Word]) -> BTreeSet<String> {
    ws.iter()
        .map(|w| w.as_bytes().iter().map(|&b| b as char).collect())
        .collect()
}

fn strs(ws: &[&str]) -> BTreeSet<String> {
    ws.iter().map(|s| s.to_string()).collect()
}

fn expect_sets(label: &str, got: &[Word], want: &[&str], failures: &mut Vec<String>) {
    if words(got) != strs(want) {
        failures.push(format!(
            "{label}: got {:?}, want {:?}",
            words(got),
            strs(want)
        ));
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut fails = Vec::new();
    expect_sets(
        "C(ababa,ababa)",
        autocorrelation_set(&Word::from("ababa")).words(),
        &["", "ba", "baba"],
        &mut fails,
    );
    expect_sets(
        "C(aabaa,aab)",
        correlation_set(&Word::from("aabaa"), &Word::from("aab")).words(),
        &["b", "ab"],
        &mut fails,
    );
    for (w, want) in [
        ("abaabaaba", vec!["aba", "baabaaba"]),
        ("aaaaa", vec!["a"]),
        ("ababaccababa", vec!["ccababa", "baccababa", "babaccababa"]),
    ] {
        expect_sets(
            &format!("K({w})"),
            prefix_code(&autocorrelation_set(&Word::from(w))).words(),
            &want,
            &mut fails,
        );
    }
    expect_sets(
        "K12(aabaa,aaa)",
        prefix_code_matrix(&set("aabaa,aaa"))[0][1].words(),
        &["a"],
        &mut fails,
    );

    let ab = set("abab,baba");
    let c12 = correlation_set(ab.get(0), ab.get(1));
    expect_sets("C12(abab,baba)", c12.words(), &["a", "aba"], &mut fails);
    let c22 = correlation_set(ab.get(1), ab.get(1));
    let a_c22: Vec<Word> = c22
        .words()
        .iter()
        .map(|e| Word::from("a").concat(e))
        .collect();
    if words(c12.words()) != words(&a_c22) {
        fails.push("C12 = a·C22 for {abab,baba}".into());
    }
    let km = prefix_code_matrix(&ab);
    let a_k22: Vec<Word> = km[1][1]
        .words()
        .iter()
        .map(|e| Word::from("a").concat(e))
        .collect();
    let known = if words(km[0][1].words()) != words(&a_k22) {
        Some(format!(
            "K12 = a·K22 for {{abab,baba}} does not hold: K12 = {:?}, a·K22 = {:?}",
            words(km[0][1].words()),
            words(&a_k22)
        ))
    } else {
        None
    };

    let e = extension_matrix(&set("aabaa,baab"));
    let want = [[vec!["baa", "abaa"], vec!["b"]], [vec!["aa"], vec!["aab"]]];
    for i in 0..2 {
        for j in 0..2 {
            expect_sets(
                &format!("E{}{}(aabaa,baab)", i + 1, j + 1),
                e[i][j].words(),
                &want[i][j],
                &mut fails,
            );
        }
    }
    expect_sets(
        "X(bababa)",
        &build_x_set(&set("bababa")).words,
        &["bababa", "babababa", "bababababa"],
        &mut fails,
    );
    expect_sets(
        "X(aabaa,baab)",
        &build_x_set(&set("aabaa,baab")).words,
        &[
            "aabaa",
            "aabaab",
            "aabaabaa",
            "aabaaabaa",
            "baab",
            "baabaa",
            "baabaab",
        ],
        &mut fails,
    );
    for (s, n) in [("bababa", 11), ("aabaa,baab", 20)] {
        let a = build_clump_automaton(&build_x_set(&set(s)), &Alphabet::binary()).unwrap();
        if a.num_states() != n {
            fails.push(format!(
                "automaton of {s}: {} states, want {n}",
                a.num_states()
            ));
        }
    }
    let spans: Vec<usize> = detect_clumps(&Word::from("bbbabababababbbbabaababb"), &set("aba,bba"))
        .iter()
        .map(|c| c.span_len())
        .collect();
    if spans != [11, 5, 3] {
        fails.push(format!("segmentation spans {spans:?}"));
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        fails.push(format!("took {elapsed:?}"));
    }
    fails.extend(known);
    if fails.is_empty() {
        Ok(format!("all golden sets match ({elapsed:?})"))
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_2() -> Check {
    let mut report = Vec::new();
    for (mname, model) in models() {
        for s in SINGLE.iter().chain(SETS.iter()) {
            let start = Instant::now();
            let set = set(s);
            let stats = clump_statistics_gf(&model, &set).map_err(|e| e.to_string())?;
            let views: Vec<(&str, RatFunc, Var, Statistic)> = vec![
                (
                    "clumps",
                    stats.clump_count().unwrap(),
                    Var::U,
                    Statistic::ClumpCount,
                ),
                (
                    "1-clumps",
                    kclump_gf_any(&model, &set, 1).unwrap(),
                    Var::V,
                    Statistic::KClumpCount(1),
                ),
                (
                    "2-clumps",
                    kclump_gf_any(&model, &set, 2).unwrap(),
                    Var::V,
                    Statistic::KClumpCount(2),
                ),
                (
                    "occurrences",
                    stats.total_occurrences().unwrap(),
                    Var::X,
                    Statistic::Occurrences,
                ),
                (
                    "coverage",
                    stats.coverage().unwrap(),
                    Var::T,
                    Statistic::Coverage,
                ),
            ];
            let series: Vec<_> = views
                .iter()
                .map(|(_, f, _, _)| series_coefficients(f, 12).unwrap())
                .collect();
            for n in 0..=12 {
                let joint = exhaustive_joint(&model, &set, n, DEFAULT_BUDGET).unwrap();
                for ((view, _, mark, stat), s) in views.iter().zip(&series) {
                    let mut gf = s.distribution(n, *mark);
                    let mut oracle = project(&joint, n, *stat).to_vec();
                    let len = gf.len().max(oracle.len());
                    gf.resize(len, q(0, 1));
                    oracle.resize(len, q(0, 1));
                    if gf != oracle {
                        return Err(format!(
                            "{s:?} {mname} {view} n={n}: {gf:?} vs {oracle:?}",
                            s = set.words()
                        ));
                    }
                }
            }
            let secs = start.elapsed().as_secs_f64();
            if secs >= 60.0 {
                return Err(format!("{s} {mname} took {secs:.1} s"));
            }
            report.push(secs);
        }
    }
    let slowest = report.iter().cloned().fold(0.0, f64::max);
    Ok(format!(
        "{} configurations exact for n <= 12 (slowest {slowest:.2} s)",
        report.len()
    ))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    for (mname, model) in models() {
        for w in SINGLE {
            let word = Word::from(w);
            let a = build_clump_automaton(&build_x_set(&set(w)), &Alphabet::binary()).unwrap();
            let pairs = [
                ("clumps", Var::U, clump_count_gf(&model, &word).unwrap()),
                ("occurrences", Var::X, occurrence_gf(&model, &word).unwrap()),
                (
                    "coverage",
                    Var::T,
                    clump_text_gf(&model, &word).unwrap().coverage().unwrap(),
                ),
            ];
            for (view, mark, formal) in pairs {
                let auto = automaton_gf_marked(&a, &model, &[mark]).unwrap().g;
                let (x, y) = (
                    series_coefficients(&auto, 40).unwrap(),
                    series_coefficients(&formal, 40).unwrap(),
                );
                if x.coeffs != y.coeffs {
                    return Err(format!("{w} {mname} {view}"));
                }
            }
        }
        for s in SETS {
            let set = set(s);
            let a = build_clump_automaton(&build_x_set(&set), &Alphabet::binary()).unwrap();
            let matrix = multi_word_clump_gf(&model, &set).unwrap().stats;
            let mut views = vec![
                (Var::U, matrix.clump_count().unwrap()),
                (Var::T, matrix.coverage().unwrap()),
            ];
            for i in 0..set.len() {
                let mut f = matrix.g.clone();
                for v in [Var::U, Var::T]
                    .into_iter()
                    .chain((0..set.len()).filter(|&j| j != i).map(word_marker))
                {
                    f = f.eval(v, &q(1, 1)).unwrap();
                }
                views.push((word_marker(i), f));
            }
            for (mark, formal) in views {
                let auto = automaton_gf_marked(&a, &model, &[mark]).unwrap().g;
                if series_coefficients(&auto, 40).unwrap().coeffs
                    != series_coefficients(&formal, 40).unwrap().coeffs
                {
                    return Err(format!("{s} {mname} {mark:?}"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 30.0 {
        return Err(format!("took {secs:.1} s"));
    }
    Ok(format!(
        "clump, occurrence and coverage marginals equal to n = 40 ({secs:.2} s)"
    ))
}

fn criterion_4() -> Check {
    for (mname, model) in models() {
        for w in SINGLE {
            let word = Word::from(w);
            let gamma = scalar_series(&expected_clumps_gf(&model, &word).unwrap(), 12).unwrap();
            let o = clump_count_gf(&model, &word).unwrap();
            let mean = o.derivative(Var::U).eval(Var::U, &q(1, 1)).unwrap();
            if scalar_series(&mean, 12).unwrap() != gamma {
                return Err(format!("{w} {mname}: Γ series differs from ∂_u O"));
            }
            for (n, g) in gamma.iter().enumerate() {
                let joint = exhaustive_joint(&model, &set(w), n, DEFAULT_BUDGET).unwrap();
                if project(&joint, n, Statistic::ClumpCount).mean() != *g {
                    return Err(format!("{w} {mname}: Γ_{n} differs from enumeration"));
                }
            }
        }
    }
    // The generating function is normative: expanding it gives
    // Γₙ = π_w[(n - |w| + 1)(1 - 𝒦(1)) + 𝒦'(1)], whose 𝒦'(1) term has the
    // opposite sign in the published closed form.
    let gamma = scalar_series(
        &expected_clumps_gf(&uniform(), &Word::from("aa")).unwrap(),
        50,
    )
    .unwrap();
    for (n, g) in gamma.iter().enumerate().skip(2) {
        if *g != q(n as i64, 8) {
            return Err(format!("aa: Γ_{n} = {g}, want {n}/8"));
        }
    }
    Ok("Γ series equals ∂_u O and enumeration for n <= 12; Γₙ = n/8 for aa, 2 <= n <= 50".into())
}

fn criterion_5() -> Check {
    for w in ["aa", "aba", "abaabaaba"] {
        for k in 1..=4 {
            let h = poisson_tail_gf(&uniform(), &Word::from(w), k).unwrap();
            let c = clump_count_coefficient(&uniform(), &Word::from(w), k).unwrap();
            if !h.equals(&c) {
                return Err(format!("{w} k={k}"));
            }
        }
    }
    Ok("H_k = [u^k] O exactly for k = 1..4 and aa, aba, abaabaaba".into())
}

/// `Ok` with detail when the check holds, `Err` otherwise.
fn poisson_check(ratios: &[(usize, f64)]) -> Result<(), String> {
    let last = ratios.last().expect("nonempty").1;
    if !(0.5..=2.0).contains(&last) {
        return Err(format!("ratio {last:.4} at n = 400 outside [0.5, 2]"));
    }
    for w in ratios.windows(2) {
        // Relative errors of order 1e-16 are rounding.
        if (w[1].1 - 1.0).abs() > (w[0].1 - 1.0).abs() + 1e-12 {
            return Err(format!(
                "|ratio - 1| increases from n = {} to n = {}",
                w[0].0, w[1].0
            ));
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let w = Word::from("abababab");
    let mut published = Vec::new();
    let mut leading = Vec::new();
    for k in [0, 1] {
        let mut pub_r = Vec::new();
        let mut lead_r = Vec::new();
        for n in [100, 200, 400] {
            let a = poisson_approximation(&uniform(), &w, n, k).map_err(|e| e.to_string())?;
            pub_r.push((n, a.display_ratio()));
            lead_r.push((n, a.ratio()));
        }
        published.push((k, pub_r));
        leading.push((k, lead_r));
    }
    let fmt = |rs: &[(usize, Vec<(usize, f64)>)]| {
        rs.iter()
            .map(|(k, r)| {
                format!(
                    "k={k}: {}",
                    r.iter()
                        .map(|(n, x)| format!("{n}:{x:.4}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    let lead_ok = leading.iter().all(|(_, r)| poisson_check(r).is_ok());
    let pub_fail: Vec<String> = published
        .iter()
        .filter_map(|(k, r)| poisson_check(r).err().map(|e| format!("k={k}: {e}")))
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let detail = format!(
        "exact/published ratios [{}]; exact/leading-term ratios [{}] ({}); {secs:.2} s",
        fmt(&published),
        fmt(&leading),
        if lead_ok {
            "leading term passes"
        } else {
            "leading term FAILS"
        }
    );
    if pub_fail.is_empty() && lead_ok && secs < 10.0 {
        Ok(detail)
    } else {
        Err(format!(
            "published approximation: {}; {detail}",
            pub_fail.join(", ")
        ))
    }
}

fn criterion_7() -> Check {
    let mut notes = Vec::new();
    for (mname, model) in models() {
        for s in SINGLE.iter().chain(SETS.iter()) {
            let set = set(s);
            let g = growth_rates(&model, &set, 1000).map_err(|e| e.to_string())?;
            if g.mean_residual >= 1e-6 || g.variance_residual >= 1e-6 {
                return Err(format!(
                    "{s} {mname}: residuals {:.2e} {:.2e}",
                    g.mean_residual, g.variance_residual
                ));
            }
            if g.variance_slope.is_nan() || g.variance_slope <= 0.0 {
                return Err(format!("{s} {mname}: variance slope {}", g.variance_slope));
            }
            if set.len() == 1 {
                let w = set.get(0);
                let k1 = clumpstat::languages::single_word_languages(&model, w)
                    .unwrap()
                    .k
                    .eval(Var::Z, &q(1, 1))
                    .constant_term();
                let exact = model.bernoulli_weight(w).unwrap() * (q(1, 1) - k1);
                if exact != g.exact_mean_slope {
                    return Err(format!(
                        "{s} {mname}: symbolic slope {} vs π(1-K(1)) = {exact}",
                        g.exact_mean_slope
                    ));
                }
                let e = num_traits::ToPrimitive::to_f64(&exact).unwrap();
                if (g.mean_slope - e).abs() > 4.0 * f64::EPSILON * e {
                    return Err(format!("{s} {mname}: mean slope {} vs {e}", g.mean_slope));
                }
            }
        }
    }
    notes.push("14 configurations stabilize to < 1e-6 by n = 1000; single-word mean slopes equal π(1-K(1))".to_string());

    let markov = TextModel::markov(
        Alphabet::binary(),
        vec![q(1, 2), q(1, 2)],
        vec![vec![q(3, 4), q(1, 4)], vec![q(1, 4), q(3, 4)]],
    )
    .unwrap();
    let aa = set("aa");
    let g = growth_rates(&markov, &aa, 2000).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mc = monte_carlo_growth(&markov, &aa, 2000, 1_000_000, 2024).map_err(|e| e.to_string())?;
    let zm = (g.mean_slope - mc.mean_slope) / mc.mean_slope_se;
    let zv = (g.variance_chord - mc.variance_slope) / mc.variance_slope_se;
    let detail = format!(
        "Markov aa, n = 2000: mean {:.5} vs MC {:.5} (z = {zm:.2}); variance {:.5} vs MC {:.5} (z = {zv:.2}); {:.1} s",
        g.mean_slope,
        mc.mean_slope,
        g.variance_chord,
        mc.variance_slope,
        start.elapsed().as_secs_f64()
    );
    if zm.abs() > 4.0 || zv.abs() > 4.0 {
        return Err(detail);
    }
    notes.push(detail);
    Ok(notes.join("; "))
}

fn criterion_8() -> Check {
    let mut clumps = 0usize;
    for s in ["aa", "aba", "aba,bba"] {
        let set = set(s);
        for n in 0..=12 {
            for text in enumerate_texts(&Alphabet::binary(), n) {
                let all = find_occurrences(&text, &set);
                for c in detect_clumps(&text, &set) {
                    clumps += 1;
                    if !satisfies_definition(&c, &all) {
                        return Err(format!("{s}: {text:?}"));
                    }
                }
            }
        }
    }
    Ok(format!("{clumps} clumps checked, zero disagreements"))
}

fn criterion_9() -> Check {
    let mut texts = 0usize;
    for s in SINGLE.iter().chain(SETS.iter()) {
        let set = set(s);
        let a = build_clump_automaton(&build_x_set(&set), &Alphabet::binary()).unwrap();
        let mut check = |text: &Word| -> Result<(), String> {
            texts += 1;
            let got = run_transducer(&a, text).map_err(|e| e.to_string())?;
            if got != TransducerTally::from(&tally(text, &set)) {
                return Err(format!("{s}: {text:?}"));
            }
            Ok(())
        };
        for n in 0..=10 {
            for text in enumerate_texts(&Alphabet::binary(), n) {
                check(&text)?;
            }
        }
        for (seed, model) in [(1, uniform()), (2, third())] {
            for text in sample_texts(&model, 200, 1000, seed).unwrap() {
                check(&text)?;
            }
        }
    }
    Ok(format!("{texts} texts, all tallies equal"))
}

fn main() {
    let criteria: [(u32, fn() -> Check); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    // Criteria whose failure is analysed in the module documentation.
    let known_failures = [1, 6];
    let mut unexpected = Vec::new();
    for (id, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS criterion {id}: {detail}"),
            Err(detail) => {
                println!("FAIL criterion {id}: {detail}");
                if !known_failures.contains(&id) {
                    unexpected.push(id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
