//! Expected number of positions covered by clumps, and the probability that
//! a given position is covered.
//!
//! ```bash
//! cargo run --example coverage
//! ```

use clumpstat::clump_gf::{coverage_stats, expected_coverage_gf};
use clumpstat::{Alphabet, TextModel, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = TextModel::uniform(Alphabet::binary());
    for w in ["aa", "aba", "abaabaaba"] {
        let w = Word::from(w);
        println!(
            "{w}: expected coverage GF {}",
            expected_coverage_gf(&model, &w)?
        );
        for n in [10, 50, 100] {
            let (expected, per_position) = coverage_stats(&model, &w, n)?;
            println!("  n = {n}: E[covered] = {expected}, P(position covered) = {per_position}");
        }
    }
    Ok(())
}
