//! Compares the alpha chain with its explicit majorant and shows the
//! harmonic-type lower bound on the log-product growing without limit.

use starlike::roots::{alpha_sequence, log_product_bound, majorant_sequence, RootConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = alpha_sequence(1.5, 50, &RootConfig::default())?;
    let x = majorant_sequence(50);
    for k in [1, 2, 5, 10, 20, 50] {
        println!(
            "k = {k:>2}: alpha = {:.6}  x = {:.6}",
            alpha.values[k], x.values[k]
        );
    }
    for n in [100, 1_000, 10_000, 100_000] {
        let b = log_product_bound(n);
        println!(
            "n = {n:>6}: lower bound {:.6} <= log product {:.6}",
            b.harmonic_sum, b.log_product
        );
    }
    Ok(())
}
