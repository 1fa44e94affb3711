//! Law of the length of a clump of a single word.
//!
//! ```bash
//! cargo run --example clump_sizes
//! ```

use clumpstat::clump_gf::clump_size_distribution;
use clumpstat::{Alphabet, TextModel, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = TextModel::uniform(Alphabet::binary());
    for w in ["aaa", "abaaba"] {
        let law = clump_size_distribution(&model, &Word::from(w), 14)?;
        println!(
            "{w}: normalization {:?}",
            law.normalization.map(|q| q.to_string())
        );
        for (size, p) in &law.weights {
            println!("  length {size}: {p}");
        }
    }
    Ok(())
}
