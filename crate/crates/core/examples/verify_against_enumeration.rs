//! Check generating-function coefficients against exhaustive enumeration of
//! all texts.
//!
//! ```bash
//! cargo run --release --example verify_against_enumeration
//! ```

use clumpstat::clump_gf::clump_statistics_gf;
use clumpstat::oracle::{exhaustive_joint, project, Statistic, DEFAULT_BUDGET};
use clumpstat::symbolic::{series_coefficients, Var};
use clumpstat::{Alphabet, ReducedWordSet, TextModel, Q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let half = Q::new(1.into(), 2.into());
    let q = |n: i64| Q::new(n.into(), 4.into());
    let markov = TextModel::markov(
        Alphabet::binary(),
        vec![half.clone(), half],
        vec![vec![q(3), q(1)], vec![q(1), q(3)]],
    )?;
    for (name, model) in [
        ("uniform", TextModel::uniform(Alphabet::binary())),
        ("markov", markov),
    ] {
        let set = ReducedWordSet::parse("aba,bba")?;
        let g = clump_statistics_gf(&model, &set)?;
        let series = series_coefficients(&g.clump_count()?, 12)?;
        for n in 0..=12 {
            let joint = exhaustive_joint(&model, &set, n, DEFAULT_BUDGET)?;
            let want = project(&joint, n, Statistic::ClumpCount).to_vec();
            let got = series.distribution(n, Var::U);
            assert_eq!(got, want, "{name}, n = {n}");
        }
        println!("{name}: clump counts agree for n = 0..12");
    }
    Ok(())
}
