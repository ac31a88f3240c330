//! Runs a small randomized counterexample search for each implication and
//! prints the tightest trial.

use starlike::verify::{counterexample_scan, DiskGrid, ScanConfig, TheoremParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let runs = [
        (TheoremParams::T1 { alpha1: 0.5 }, 2),
        (TheoremParams::C2, 2),
        (TheoremParams::T4 { alpha0: 1.0 }, 5),
        (TheoremParams::T5 { delta: 0.3, s: 2 }, 2),
        (TheoremParams::L3, 3),
    ];
    for (params, p) in runs {
        let mut cfg = ScanConfig::new(params, 40, 2024, p);
        cfg.grid = DiskGrid::new(0.995, 32, 256)?;
        let r = counterexample_scan(&cfg)?;
        print!(
            "{}: {} pass, {} fail, {} hypothesis misses",
            r.theorem_id, r.passed, r.failed, r.hypothesis_not_satisfied
        );
        match &r.worst {
            Some(w) => println!(
                "; tightest: trial {} {} margin {:.4}",
                w.trial, w.label, w.margin
            ),
            None => println!(),
        }
    }
    Ok(())
}
