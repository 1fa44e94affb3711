//! Exact distribution of the number of clumps, occurrences and covered
//! positions from one trivariate generating function.
//!
//! ```bash
//! cargo run --example clump_distribution
//! ```

use clumpstat::clump_gf::{clump_text_gf, expected_clumps, moment_series};
use clumpstat::symbolic::{series_coefficients, Var};
use clumpstat::{Alphabet, TextModel, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = TextModel::uniform(Alphabet::binary());
    let w = Word::from("aa");
    let g = clump_text_gf(&model, &w)?;
    println!("G(z, u, t, x) = {}", g.g);

    let n = 10;
    let clumps = series_coefficients(&g.clump_count()?, n)?;
    for (k, p) in clumps.distribution(n, Var::U).iter().enumerate() {
        println!("P({k} clumps in a text of length {n}) = {p}");
    }
    println!("E[clumps] = {}", expected_clumps(&model, &w, n)?);

    let moments = moment_series(&g.coverage()?, Var::T, n)?;
    let (mean, var) = &moments[n];
    println!("covered positions: mean {mean}, variance {var}");
    Ok(())
}
