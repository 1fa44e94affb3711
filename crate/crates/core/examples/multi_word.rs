//! Clump statistics of a reduced set of words, with a separate occurrence
//! marker for each word.
//!
//! ```bash
//! cargo run --example multi_word
//! ```

use clumpstat::clump_gf::multi_word_clump_gf;
use clumpstat::languages::word_marker;
use clumpstat::symbolic::{series_coefficients, Var};
use clumpstat::{Alphabet, ReducedWordSet, TextModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = TextModel::uniform(Alphabet::binary());
    let set = ReducedWordSet::parse("aabaa,baab")?;
    let m = multi_word_clump_gf(&model, &set)?;
    for (i, row) in m.k.iter().enumerate() {
        println!(
            "K row {}: {}",
            i + 1,
            row.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" | ")
        );
    }

    let n = 12;
    let clumps = series_coefficients(&m.stats.clump_count()?, n)?;
    println!(
        "clumps at n = {n}: {:?}",
        clumps
            .distribution(n, Var::U)
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
    );

    let occ = series_coefficients(&m.stats.occurrences()?, n)?;
    for i in 0..set.len() {
        let law = occ.distribution(n, word_marker(i));
        println!(
            "occurrences of {} at n = {n}: {:?}",
            set.get(i),
            law.iter().map(|q| q.to_string()).collect::<Vec<_>>()
        );
    }
    Ok(())
}
