//! Dominant root of the denominator and the pole approximation of the
//! probability of exactly k clumps.
//!
//! ```bash
//! cargo run --release --example asymptotics
//! ```

use clumpstat::asymptotics::{dominant_root, poisson_approximation};
use clumpstat::{Alphabet, TextModel, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = TextModel::uniform(Alphabet::binary());
    let w = Word::from("abababab");
    let root = dominant_root(&model, &w, 1e-30)?;
    println!(
        "ρ = {} (multiplicity {}, enclosure width {:.1e})",
        root.rho,
        root.multiplicity,
        root.width()
    );
    for k in 0..=2 {
        for n in [100, 200, 400] {
            let a = poisson_approximation(&model, &w, n, k)?;
            println!("k = {k}, n = {n}: exact / leading term = {:.6}", a.ratio());
        }
    }
    Ok(())
}
