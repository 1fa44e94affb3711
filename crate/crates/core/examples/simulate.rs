//! Monte Carlo estimate of the clump-count law next to the exact one.
//!
//! ```bash
//! cargo run --release --example simulate
//! ```

use clumpstat::clump_gf::clump_statistics_gf;
use clumpstat::oracle::{monte_carlo, Statistic};
use clumpstat::symbolic::{series_coefficients, Var};
use clumpstat::{Alphabet, ReducedWordSet, TextModel};
use num_traits::ToPrimitive;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = TextModel::uniform(Alphabet::binary());
    let set = ReducedWordSet::parse("aa")?;
    let n = 40;
    let mc = monte_carlo(&model, &set, n, Statistic::ClumpCount, 20_000, 7)?;
    let exact = series_coefficients(&clump_statistics_gf(&model, &set)?.clump_count()?, n)?
        .distribution(n, Var::U);
    println!("k\tsampled\t±se\texact");
    for (k, p) in exact.iter().enumerate() {
        let k32 = k as u32;
        println!(
            "{k}\t{:.4}\t{:.4}\t{:.4}",
            mc.frequency(k32),
            mc.standard_error(k32),
            p.to_f64().unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
