//! Writes `arg f'(z)` for `f = z + 0.25 z^2` as an `r,theta,value` CSV.
//!
//! Usage: `cargo run --example heatmap [-- OUT.csv]`

use std::path::PathBuf;

use num_complex::Complex64;
use starlike::cli::{emit_heatmap, heatmap_rows, HeatmapQuantity};
use starlike::series::make_series;
use starlike::verify::DiskGrid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("starlike_heatmap.csv"));
    let f = make_series(1, &[Complex64::new(0.25, 0.0)], 2)?;
    let grid = DiskGrid::new(0.9, 32, 256)?;
    emit_heatmap(&f, HeatmapQuantity::ArgFp, &grid, &out)?;
    let max = heatmap_rows(&f, HeatmapQuantity::ArgFp, &grid)?
        .iter()
        .map(|r| r.value)
        .fold(f64::NEG_INFINITY, f64::max);
    println!("wrote {} rows to {}", grid.len(), out.display());
    println!("max arg f' = {max:.6} (asin 0.45 = {:.6})", 0.45f64.asin());
    Ok(())
}
