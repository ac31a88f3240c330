//! Tabulates the alpha chain for the two usual starting values and reports the
//! first index where consecutive terms sum to at most one.

use starlike::roots::{alpha_sequence, pair_sum_threshold, RootConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RootConfig::default();
    let a = alpha_sequence(1.5, 6, &cfg)?;
    let b = alpha_sequence(1.0, 6, &cfg)?;
    println!(" k   from 3/2          from 1");
    for k in 0..a.len() {
        println!("{k:>2}   {:.12}    {:.12}", a.values[k], b.values[k]);
    }
    for alpha0 in [1.5, 1.0, 0.8] {
        println!(
            "alpha0 = {alpha0}: sigma = {:?}",
            pair_sum_threshold(alpha0, 64, &cfg)?
        );
    }
    Ok(())
}
