use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::series::{principal_arg, PowerSeries, ZERO_TOL};

/// Polar sample of the closed disk `|z| <= r_max`.
///
/// Radii are geometrically spaced from `r_max / n_radial` to `r_max`; angles
/// are `2 pi j / n_angular`. The origin is never sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskGrid {
    pub r_max: f64,
    pub n_radial: usize,
    pub n_angular: usize,
}

impl Default for DiskGrid {
    fn default() -> Self {
        Self {
            r_max: 0.995,
            n_radial: 64,
            n_angular: 512,
        }
    }
}

impl DiskGrid {
    pub fn new(r_max: f64, n_radial: usize, n_angular: usize) -> Result<Self, VerifyError> {
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(VerifyError::ParamOutOfRange(format!(
                "r_max must lie in (0, 1), got {r_max}"
            )));
        }
        if n_radial < 1 || n_angular < 1 {
            return Err(VerifyError::ParamOutOfRange(
                "grid needs at least one radius and one angle".into(),
            ));
        }
        Ok(Self {
            r_max,
            n_radial,
            n_angular,
        })
    }

    pub fn with_r_max(self, r_max: f64) -> Result<Self, VerifyError> {
        Self::new(r_max, self.n_radial, self.n_angular)
    }

    pub fn len(&self) -> usize {
        self.n_radial * self.n_angular
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn radii(&self) -> Vec<f64> {
        if self.n_radial == 1 {
            return vec![self.r_max];
        }
        let n = self.n_radial as f64;
        let last = (self.n_radial - 1) as f64;
        (0..self.n_radial)
            .map(|i| self.r_max * n.powf(i as f64 / last - 1.0))
            .collect()
    }

    pub fn angles(&self) -> Vec<f64> {
        // j / n is exact for nested refinements, so doubling n_angular
        // reproduces every coarse angle bit-for-bit
        let n = self.n_angular as f64;
        (0..self.n_angular).map(|j| TAU * (j as f64 / n)).collect()
    }

    pub fn samples(&self) -> GridSamples {
        let radii = self.radii();
        let angles = self.angles();
        let unit: Vec<Complex64> = angles
            .iter()
            .map(|&t| Complex64::from_polar(1.0, t))
            .collect();
        let points = radii
            .iter()
            .flat_map(|&r| unit.iter().map(move |u| u * r))
            .collect();
        GridSamples {
            grid: *self,
            radii,
            angles,
            points,
        }
    }
}

/// Materialized grid points in (radial, angular) lexicographic order.
#[derive(Debug, Clone)]
pub struct GridSamples {
    pub grid: DiskGrid,
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
    pub points: Vec<Complex64>,
}

impl GridSamples {
    pub fn radial_index(&self, flat: usize) -> usize {
        flat / self.grid.n_angular
    }

    /// Samples with radius index below `n_radii`.
    #[cfg(test)]
    pub(crate) fn inner(&self, n_radii: usize) -> &[Complex64] {
        &self.points[..n_radii.min(self.radii.len()) * self.grid.n_angular]
    }
}

/// Largest `|arg|` over the grid with its first lexicographic witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupArgResult {
    pub sup_abs_arg: f64,
    pub witness: Complex64,
    pub samples_used: usize,
}

/// Smallest real part over the grid with its first lexicographic witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinRealResult {
    pub min_real: f64,
    pub witness: Complex64,
    pub samples_used: usize,
}

type Pick = Result<(f64, usize), (usize, VerifyError)>;

/// Order-independent arg-max: larger value wins, ties go to the smaller
/// index, and among errors the smallest index is kept.
fn pick_max(a: Pick, b: Pick) -> Pick {
    match (a, b) {
        (Ok(x), Ok(y)) => {
            if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                Ok(y)
            } else {
                Ok(x)
            }
        }
        (Err(e), Ok(_)) | (Ok(_), Err(e)) => Err(e),
        (Err(e1), Err(e2)) => Err(if e2.0 < e1.0 { e2 } else { e1 }),
    }
}

/// Parallel max of `score` over `points` with the deterministic tie-break.
pub(crate) fn argmax<F>(points: &[Complex64], score: F) -> Result<(f64, usize), VerifyError>
where
    F: Fn(Complex64) -> Result<f64, VerifyError> + Sync,
{
    points
        .par_iter()
        .enumerate()
        .map(|(i, &z)| score(z).map(|v| (v, i)).map_err(|e| (i, e)))
        .reduce(|| Ok((f64::NEG_INFINITY, usize::MAX)), pick_max)
        .map_err(|(_, e)| e)
}

pub(crate) fn zero_on_grid(z: Complex64, modulus: f64, context: &str) -> VerifyError {
    VerifyError::ZeroOnGrid {
        re: z.re,
        im: z.im,
        modulus,
        context: context.to_string(),
    }
}

/// `|arg w(z)|` for a sampled functional, rejecting near-zero values.
pub(crate) fn abs_arg_of(w: Complex64, z: Complex64, context: &str) -> Result<f64, VerifyError> {
    let modulus = w.norm();
    if modulus < ZERO_TOL {
        return Err(zero_on_grid(z, modulus, context));
    }
    Ok(principal_arg(w).expect("nonzero").abs())
}

pub(crate) fn sup_abs_arg_by<F>(
    points: &[Complex64],
    value: F,
    context: &str,
) -> Result<SupArgResult, VerifyError>
where
    F: Fn(Complex64) -> Result<Complex64, VerifyError> + Sync,
{
    let (sup, i) = argmax(points, |z| abs_arg_of(value(z)?, z, context))?;
    Ok(SupArgResult {
        sup_abs_arg: sup,
        witness: points[i],
        samples_used: points.len(),
    })
}

pub(crate) fn min_real_by<F>(points: &[Complex64], value: F) -> Result<MinRealResult, VerifyError>
where
    F: Fn(Complex64) -> Result<Complex64, VerifyError> + Sync,
{
    let (neg, i) = argmax(points, |z| {
        let w = value(z)?;
        Ok(-w.re)
    })?;
    Ok(MinRealResult {
        min_real: -neg,
        witness: points[i],
        samples_used: points.len(),
    })
}

fn over_power_checked(
    s: &PowerSeries,
    m: usize,
    z: Complex64,
    context: &str,
) -> Result<Complex64, VerifyError> {
    let w = s.over_power(z, m);
    let modulus = w.norm();
    if modulus < ZERO_TOL {
        return Err(zero_on_grid(z, modulus, context));
    }
    Ok(w)
}

pub(crate) fn sup_arg_on(
    s: &PowerSeries,
    divisor_power: usize,
    points: &[Complex64],
) -> Result<SupArgResult, VerifyError> {
    let context = format!("arg of series / z^{divisor_power}");
    sup_abs_arg_by(
        points,
        |z| over_power_checked(s, divisor_power, z, &context),
        &context,
    )
}

pub(crate) fn min_real_on(
    s: &PowerSeries,
    divisor_power: usize,
    points: &[Complex64],
) -> Result<MinRealResult, VerifyError> {
    let context = format!("real part of series / z^{divisor_power}");
    min_real_by(points, |z| {
        over_power_checked(s, divisor_power, z, &context)
    })
}

/// `max |arg(s(z) / z^divisor_power)|` over the grid.
pub fn sup_arg(
    s: &PowerSeries,
    divisor_power: usize,
    grid: &DiskGrid,
) -> Result<SupArgResult, VerifyError> {
    if s.is_zero() {
        return Err(VerifyError::ParamOutOfRange(
            "series is identically zero".into(),
        ));
    }
    sup_arg_on(s, divisor_power, &grid.samples().points)
}

/// `min Re(s(z) / z^divisor_power)` over the grid.
pub fn min_real(
    s: &PowerSeries,
    divisor_power: usize,
    grid: &DiskGrid,
) -> Result<MinRealResult, VerifyError> {
    if s.is_zero() {
        return Err(VerifyError::ParamOutOfRange(
            "series is identically zero".into(),
        ));
    }
    min_real_on(s, divisor_power, &grid.samples().points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::make_series;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn linear(cf: f64) -> PowerSeries {
        PowerSeries::new(0, vec![c(1.0, 0.0), c(cf, 0.0)]).unwrap()
    }

    /// Dense angular scan on the outer circle, independent of the grid code.
    fn dense_circle_sup(s: &PowerSeries, r: f64, n: usize) -> f64 {
        (0..n)
            .map(|j| {
                let z = Complex64::from_polar(r, TAU * j as f64 / n as f64);
                let w = s.value_at(z);
                w.im.atan2(w.re).abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn grid_layout() {
        let g = DiskGrid::default();
        let r = g.radii();
        assert_eq!(r.len(), 64);
        assert!((r[0] - 0.995 / 64.0).abs() < 1e-15);
        assert_eq!(*r.last().unwrap(), 0.995);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
        let ratios: Vec<f64> = r.windows(2).map(|w| w[1] / w[0]).collect();
        assert!(ratios.iter().all(|q| (q - ratios[0]).abs() < 1e-12));
        let s = g.samples();
        assert_eq!(s.points.len(), 64 * 512);
        assert!(s.points.iter().all(|z| z.norm() <= 0.995 + 1e-15));
        assert_eq!(DiskGrid::new(0.5, 1, 3).unwrap().radii(), vec![0.5]);
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(DiskGrid::new(1.0, 4, 4).is_err());
        assert!(DiskGrid::new(0.0, 4, 4).is_err());
        assert!(DiskGrid::new(0.5, 0, 4).is_err());
        assert!(DiskGrid::new(0.5, 4, 0).is_err());
    }

    #[test]
    fn doubled_angular_grid_contains_coarse_angles() {
        let coarse = DiskGrid::new(0.9, 8, 100).unwrap().angles();
        let fine = DiskGrid::new(0.9, 8, 200).unwrap().angles();
        for (j, a) in coarse.iter().enumerate() {
            assert_eq!(*a, fine[2 * j]);
        }
    }

    #[test]
    fn sup_arg_examples() {
        let constant = PowerSeries::constant(c(6.0, 0.0));
        let r = sup_arg(&constant, 0, &DiskGrid::default()).unwrap();
        assert_eq!(r.sup_abs_arg, 0.0);
        // every point ties at 0, so the witness is the first sample
        assert_eq!(r.witness, c(0.995 / 64.0, 0.0));

        let g09 = DiskGrid::new(0.9, 64, 512).unwrap();
        let s = linear(0.5);
        let oracle = dense_circle_sup(&s, 0.9, 4096);
        assert!((oracle - 0.45f64.asin()).abs() < 1e-6);
        let got = sup_arg(&s, 0, &g09).unwrap().sup_abs_arg;
        assert!(got <= oracle + 1e-15);
        assert!((got - oracle).abs() < 2e-3);

        let f = make_series(2, &[c(1.0, 0.0)], 2).unwrap();
        let got = sup_arg(&f, 2, &DiskGrid::default()).unwrap().sup_abs_arg;
        assert!((got - 0.995f64.asin()).abs() < 2e-3, "{got}");
    }

    #[test]
    fn min_real_examples() {
        let g09 = DiskGrid::new(0.9, 64, 512).unwrap();
        let m = min_real(&linear(0.5), 0, &g09).unwrap();
        assert!((m.min_real - 0.55).abs() < 1e-15);
        assert!((m.witness - c(-0.9, 0.0)).norm() < 1e-15);

        let m = min_real(&PowerSeries::constant(c(6.0, 0.0)), 0, &DiskGrid::default()).unwrap();
        assert_eq!(m.min_real, 6.0);

        let m = min_real(&linear(1.0), 0, &DiskGrid::default()).unwrap();
        assert!((m.min_real - 0.005).abs() < 1e-6);
    }

    #[test]
    fn zero_on_grid_is_reported_at_first_offender() {
        // 1 + 2z vanishes at -1/2; put a grid point there
        let g = DiskGrid::new(0.5, 1, 2).unwrap();
        match sup_arg(&linear(2.0), 0, &g) {
            Err(VerifyError::ZeroOnGrid { re, im, .. }) => {
                assert!((re + 0.5).abs() < 1e-15 && im.abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(sup_arg(&PowerSeries::zero(), 0, &g).is_err());
    }

    #[test]
    fn refinement_and_radius_monotonicity() {
        let s = PowerSeries::new(
            0,
            vec![c(1.0, 0.0), c(0.3, 0.2), c(-0.1, 0.25), c(0.05, 0.0)],
        )
        .unwrap();
        let base = DiskGrid::new(0.95, 16, 64).unwrap();
        let finer_angles = DiskGrid::new(0.95, 16, 128).unwrap();
        let a = sup_arg(&s, 0, &base).unwrap().sup_abs_arg;
        let b = sup_arg(&s, 0, &finer_angles).unwrap().sup_abs_arg;
        assert!(b >= a);
        let ma = min_real(&s, 0, &base).unwrap().min_real;
        let mb = min_real(&s, 0, &finer_angles).unwrap().min_real;
        assert!(mb <= ma);

        let samples = base.samples();
        let mut prev = 0.0;
        for n in 1..=16 {
            let v = sup_arg_on(&s, 0, samples.inner(n)).unwrap().sup_abs_arg;
            assert!(v >= prev);
            prev = v;
        }
    }
}
