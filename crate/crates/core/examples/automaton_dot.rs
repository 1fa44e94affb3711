//! Build the marked clump automaton, run it as a transducer and export it as
//! Graphviz DOT.
//!
//! ```bash
//! cargo run --example automaton_dot > clumps.dot && dot -Tsvg clumps.dot -o clumps.svg
//! ```

use clumpstat::automaton::{
    accepted_language_gf, automaton_gf, build_clump_automaton, build_x_set, export_dot,
    run_transducer,
};
use clumpstat::{Alphabet, ReducedWordSet, TextModel, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let set = ReducedWordSet::parse("aba,bba")?;
    let x = build_x_set(&set);
    let a = build_clump_automaton(&x, &Alphabet::binary())?;
    eprintln!(
        "{} states, final states {:?}",
        a.num_states(),
        a.final_states()
    );

    let text = Word::from("bbbabababababbbbabaababb");
    let t = run_transducer(&a, &text)?;
    eprintln!(
        "{text}: {} clumps, occurrences {:?}, coverage {}",
        t.clumps, t.occurrences, t.coverage
    );

    let model = TextModel::uniform(Alphabet::binary());
    eprintln!("GF: {}", automaton_gf(&a, &model)?.g);
    eprintln!(
        "first-clump language: {}",
        accepted_language_gf(&a, &model)?
    );

    print!("{}", export_dot(&a));
    Ok(())
}
