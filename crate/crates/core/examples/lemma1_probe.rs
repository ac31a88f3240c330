//! Locates the first boundary point of `q(z) = 1 + u z` at several levels and
//! compares the measured constant `k` with its lower bound.

use std::f64::consts::PI;

use num_complex::Complex64;
use starlike::series::PowerSeries;
use starlike::verify::{lemma1_probe, DiskGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = DiskGrid::default();
    for u in [0.3, 0.6, 0.9, 1.0] {
        let q = PowerSeries::new(0, vec![Complex64::new(1.0, 0.0), Complex64::new(u, 0.0)])?;
        let gamma = 2.0 * (0.6 * u).asin() / PI;
        let r = lemma1_probe(&q, gamma, &grid)?;
        println!(
            "u = {u}: r0 = {:.9}, ratio = {:.3e}{:+.9}i, k = {:.9} >= {:.9}",
            r.r0, r.ratio.re, r.ratio.im, r.k_est, r.k_lower_bound
        );
    }
    Ok(())
}
