//! Solves the two implicit constants: `gamma0` from `2g + (2/pi) atan g = 1`
//! and `delta_max` from `2d + (2/pi) atan d = 2`.

use starlike::roots::{solve_delta_max, solve_gamma0, RootConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RootConfig::default();
    let g = solve_gamma0(&cfg)?;
    println!(
        "gamma0    = {:.15}  composite bound {:.15}  residual {:.1e}",
        g.root, g.bound, g.residual
    );
    let d = solve_delta_max(&cfg)?;
    println!(
        "delta_max = {:.15}  bound {:.15}  residual {:.1e}",
        d.root, d.bound, d.residual
    );

    let loose = RootConfig::new(1e-4, 200)?;
    println!("gamma0 at tol 1e-4: {:.6}", solve_gamma0(&loose)?.root);
    Ok(())
}
