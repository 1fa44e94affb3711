//! Linear growth of the mean and variance of the clump count, compared
//! with a coupled Monte Carlo estimate under a Markov model.
//!
//! ```bash
//! cargo run --release --example growth
//! ```

use clumpstat::asymptotics::growth_rates;
use clumpstat::oracle::monte_carlo_growth;
use clumpstat::{Alphabet, ReducedWordSet, TextModel, Q};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = |n: i64, d: i64| Q::new(n.into(), d.into());
    let model = TextModel::markov(
        Alphabet::binary(),
        vec![q(1, 2), q(1, 2)],
        vec![vec![q(3, 4), q(1, 4)], vec![q(1, 4), q(3, 4)]],
    )?;
    let set = ReducedWordSet::parse("aa")?;
    let g = growth_rates(&model, &set, 500)?;
    println!(
        "exact mean slope {} ({:.6}), variance slope {:.6}",
        g.exact_mean_slope, g.mean_slope, g.variance_slope
    );

    let mc = monte_carlo_growth(&model, &set, 500, 20_000, 1)?;
    println!(
        "sampled mean slope {:.5} ± {:.5}, variance slope {:.5} ± {:.5}",
        mc.mean_slope, mc.mean_slope_se, mc.variance_slope, mc.variance_slope_se
    );
    Ok(())
}
