//! Clumps containing exactly k occurrences.
//!
//! ```bash
//! cargo run --example kclumps
//! ```

use clumpstat::clump_gf::{kclump_gf, multi_kclump_gf};
use clumpstat::symbolic::{series_coefficients, Var};
use clumpstat::{Alphabet, ReducedWordSet, TextModel, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = TextModel::uniform(Alphabet::binary());
    let n = 16;
    for k in 1..=3 {
        let f = kclump_gf(&model, &Word::from("aba"), k)?;
        let law = series_coefficients(&f, n)?.distribution(n, Var::V);
        println!(
            "aba, {k}-clumps at n = {n}: {}",
            law.iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }

    let set = ReducedWordSet::parse("aba,bba")?;
    let f = multi_kclump_gf(&model, &set, 2)?;
    let law = series_coefficients(&f, n)?.distribution(n, Var::V);
    println!(
        "{{aba, bba}}, 2-clumps at n = {n}: {}",
        law.iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(())
}
