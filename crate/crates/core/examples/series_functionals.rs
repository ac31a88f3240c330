//! Builds `z/(1-z)` truncated at 64 terms and evaluates it together with the
//! starlikeness and convexity functionals at a few points.

use num_complex::Complex64;
use starlike::series::{jcv, jst, make_series, EvalPoint, DEFAULT_TRUNCATION};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tail = vec![Complex64::new(1.0, 0.0); DEFAULT_TRUNCATION - 1];
    let f = make_series(1, &tail, DEFAULT_TRUNCATION)?;
    println!("f = z + z^2 + ... + z^{}", f.degree());
    for (re, im) in [(0.5, 0.0), (0.0, 0.5), (-0.3, 0.4)] {
        let z = EvalPoint::from_parts(re, im)?;
        println!(
            "z = {:>5}: f = {:.12}, zf'/f = {:.12}, 1 + zf''/f' = {:.12}",
            format!("{re}{im:+}i"),
            f.eval(z),
            jst(&f, z)?,
            jcv(&f, z)?
        );
    }
    let f3 = f.differentiate(3);
    println!(
        "f''' has order {} and {} stored terms",
        f3.order(),
        f3.truncation()
    );
    Ok(())
}
