//! Checks a few implications on concrete functions and prints each sampled
//! quantity with its bound and margin.

use num_complex::Complex64;
use starlike::series::make_series;
use starlike::verify::{check_theorem, DiskGrid, TheoremParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = DiskGrid::default();
    // f'' = 2 (1 + 0.3 z)
    let f = make_series(2, &[Complex64::new(0.1, 0.0)], 2)?;
    let cases = [
        TheoremParams::T1 { alpha1: 0.5 },
        TheoremParams::C1,
        TheoremParams::C2,
        TheoremParams::T3 { alpha0: 1.0 },
        TheoremParams::T5 { delta: 0.5, s: 2 },
        TheoremParams::L2,
    ];
    for params in cases {
        let r = check_theorem(&params, &f, &grid)?;
        println!("{} -> {:?}", r.theorem_id, r.verdict);
        for q in std::iter::once(&r.hypothesis).chain(&r.conclusions) {
            println!(
                "    {:<32} {:>10.6} vs {:>9.6}  margin {:+.3e}",
                q.label, q.value, q.bound, q.margin
            );
        }
        for note in &r.notes {
            println!("    note: {note}");
        }
    }
    Ok(())
}
