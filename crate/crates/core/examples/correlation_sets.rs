//! Correlation sets, right extension sets and prefix codes of words and
//! word pairs.
//!
//! ```bash
//! cargo run --example correlation_sets
//! ```

use clumpstat::correlation::{
    autocorrelation_set, correlation_matrix, extension_matrix, prefix_code, prefix_code_matrix,
};
use clumpstat::{ReducedWordSet, Word};

fn show(words: &[Word]) -> String {
    let parts: Vec<String> = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "ε".into()
            } else {
                w.to_string()
            }
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for w in ["ababa", "abaabaaba", "aaaaa"] {
        let c = autocorrelation_set(&Word::from(w));
        let k = prefix_code(&c);
        println!("{w}: C = {}, K = {}", show(c.words()), show(k.words()));
    }

    let set = ReducedWordSet::parse("aabaa,baab")?;
    let (c, e, k) = (
        correlation_matrix(&set),
        extension_matrix(&set),
        prefix_code_matrix(&set),
    );
    for i in 0..set.len() {
        for j in 0..set.len() {
            println!(
                "({}, {}): C = {}, E = {}, K = {}",
                set.get(i),
                set.get(j),
                show(c[i][j].words()),
                show(e[i][j].words()),
                show(k[i][j].words())
            );
        }
    }
    Ok(())
}
