//! Generating functions of the classical languages of a single word under a
//! biased Bernoulli model, and their multi-word counterparts.
//!
//! ```bash
//! cargo run --example languages
//! ```

use clumpstat::languages::{multi_word_languages, occurrence_gf, single_word_languages};
use clumpstat::symbolic::scalar_series;
use clumpstat::{Alphabet, ReducedWordSet, TextModel, Word, Q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = TextModel::bernoulli(
        Alphabet::binary(),
        vec![Q::new(1.into(), 3.into()), Q::new(2.into(), 3.into())],
    )?;
    let w = Word::from("aba");
    let l = single_word_languages(&model, &w)?;
    println!("C(z) = {}", l.c);
    println!("K(z) = {}", l.k);
    println!("D(z) = {}", l.d);
    println!("R(z) = {}", l.r);
    println!("N(z) = {}", l.n);

    // Probability that a text of length n avoids aba.
    let avoid = scalar_series(&l.n, 10)?;
    println!(
        "P(no aba), n = 0..10: {}",
        avoid
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );

    println!("occurrences: {}", occurrence_gf(&model, &w)?);

    let set = ReducedWordSet::parse("aba,bba")?;
    let m = multi_word_languages(&model, &set)?;
    println!(
        "multi-word identities failing: {:?}",
        m.identity_failures()?
    );
    Ok(())
}
