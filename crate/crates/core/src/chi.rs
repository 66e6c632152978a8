//! Wavevector-dependent susceptibility on Brillouin-zone grids.
//!
//! Every supported model is in a phase with zero magnetization, so chi(q) is
//! the Fourier sum of raw pair correlations over separations in a square
//! window |dx|, |dy| <= R. The correlations used here are even in dx and in
//! dy separately, so the sum reduces to `sum w(dx, dy) cos(qx dx) cos(qy dy)`
//! over the first quadrant and is real and even by construction.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;

use crate::corr::CorrelationTable;
use crate::error::{Error, Result};
use crate::frustrated::{check_table, ff_correlation, FrustratedModel, SeparationClass, SiteParity, Version};

/// Default commensurability denominator: peaks on multiples of 2 pi / 4.
pub const DEFAULT_DENOMINATOR: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wavevector {
    pub qx: f64,
    pub qy: f64,
}

impl Wavevector {
    /// Wraps each component into [-pi, pi).
    pub fn new(qx: f64, qy: f64) -> Self {
        Self { qx: wrap(qx), qy: wrap(qy) }
    }
}

fn wrap(q: f64) -> f64 {
    let t = (q + PI).rem_euclid(2.0 * PI) - PI;
    if t >= PI {
        -PI
    } else {
        t
    }
}

/// The correlation source a susceptibility is summed from.
#[derive(Clone, Copy, Debug)]
pub enum ChiModel<'a> {
    Uniform(&'a CorrelationTable),
    Frustrated(&'a FrustratedModel, &'a CorrelationTable),
    /// Uniform correlations times the row-sign autocorrelation kappa(|dy|).
    ColumnGauge(&'a CorrelationTable, &'a [f64]),
}

/// First-quadrant weights w(dx, dy), `values[dy * (radius + 1) + dx]`, with the
/// multiplicity of the mirrored terms folded in.
#[derive(Clone, Debug)]
struct Weights {
    radius: usize,
    values: Vec<f64>,
}

impl Weights {
    fn build(radius: usize, f: impl Fn(i64, i64) -> Result<f64>) -> Result<Self> {
        let side = radius + 1;
        let mut values = Vec::with_capacity(side * side);
        for dy in 0..side {
            for dx in 0..side {
                let mult = if dx == 0 { 1.0 } else { 2.0 } * if dy == 0 { 1.0 } else { 2.0 };
                values.push(mult * f(dx as i64, dy as i64)?);
            }
        }
        Ok(Self { radius, values })
    }

    /// Row sums `sum_dx w(dx, dy) cos(qx dx)` for every dy.
    fn row_sums(&self, qx: f64) -> Vec<f64> {
        let side = self.radius + 1;
        let cx: Vec<f64> = (0..side).map(|d| (qx * d as f64).cos()).collect();
        self.values
            .chunks(side)
            .map(|row| row.iter().zip(&cx).map(|(w, c)| w * c).sum())
            .collect()
    }

    fn eval(&self, q: Wavevector) -> f64 {
        let rows = self.row_sums(q.qx);
        rows.iter().enumerate().map(|(dy, r)| r * (q.qy * dy as f64).cos()).sum()
    }
}

fn require_disordered(table: &CorrelationTable) -> Result<()> {
    let k = table.requested_k();
    if !(k < 1.0) {
        return Err(Error::Domain(format!(
            "chi needs a disordered table with k in (0, 1), got k = {k}"
        )));
    }
    Ok(())
}

fn require_radius(table: &CorrelationTable, needed: usize, window: usize) -> Result<()> {
    if needed > table.radius {
        return Err(Error::Range(format!(
            "window radius {window} needs table radius {needed}, table has {}",
            table.radius
        )));
    }
    Ok(())
}

impl ChiModel<'_> {
    fn weights(&self, radius: usize) -> Result<Weights> {
        match *self {
            ChiModel::Uniform(table) => {
                require_disordered(table)?;
                require_radius(table, radius, radius)?;
                Weights::build(radius, |dx, dy| table.c(dx, dy))
            }
            ChiModel::ColumnGauge(table, kappa) => {
                require_disordered(table)?;
                require_radius(table, radius, radius)?;
                if kappa.len() <= radius {
                    return Err(Error::Range(format!(
                        "autocorrelation has lags up to {}, window needs {radius}",
                        kappa.len() as i64 - 1
                    )));
                }
                Weights::build(radius, |dx, dy| Ok(table.c(dx, dy)? * kappa[dy as usize]))
            }
            ChiModel::Frustrated(model, table) => {
                check_table(model, table)?;
                require_radius(table, radius.div_ceil(2), radius)?;
                // the even-odd class alternates with the base sublattice and averages out
                let base = SiteParity::of(0, 0);
                Weights::build(radius, |dx, dy| match SeparationClass::of(dx, dy) {
                    SeparationClass::EvenEven | SeparationClass::OddEven => {
                        ff_correlation(model, table, dx, dy, base)
                    }
                    _ => Ok(0.0),
                })
            }
        }
    }

    /// Short label for file headers and logs.
    pub fn describe(&self) -> String {
        match self {
            ChiModel::Uniform(t) => format!("uniform k={}", t.requested_k()),
            ChiModel::Frustrated(m, _) => format!(
                "frustrated S={} version={}",
                m.strength,
                match m.version {
                    Version::Checkerboard => "a",
                    Version::Columnar => "b",
                }
            ),
            ChiModel::ColumnGauge(t, _) => format!("column-gauge k={}", t.requested_k()),
        }
    }

    /// Bound on the omitted mass outside the window.
    pub fn tail(&self, radius: usize) -> Result<f64> {
        match *self {
            ChiModel::Uniform(t) | ChiModel::ColumnGauge(t, _) => tail_estimate(t, radius),
            ChiModel::Frustrated(m, t) => frustrated_tail_estimate(m, t, radius),
        }
    }

    pub fn chi(&self, q: Wavevector, radius: usize) -> Result<f64> {
        Ok(self.weights(radius)?.eval(Wavevector::new(q.qx, q.qy)))
    }
}

pub fn chi_uniform(table: &CorrelationTable, q: Wavevector, radius: usize) -> Result<f64> {
    ChiModel::Uniform(table).chi(q, radius)
}

pub fn chi_frustrated(model: &FrustratedModel, table: &CorrelationTable, q: Wavevector, radius: usize) -> Result<f64> {
    ChiModel::Frustrated(model, table).chi(q, radius)
}

pub fn chi_column_gauge(table: &CorrelationTable, kappa: &[f64], q: Wavevector, radius: usize) -> Result<f64> {
    ChiModel::ColumnGauge(table, kappa).chi(q, radius)
}

/// Geometric bound from a log-linear fit of (distance, magnitude) samples.
fn geometric_tail(samples: &[(f64, f64)], radius: usize, amplitude_scale: f64) -> Result<f64> {
    if samples.len() < 3 {
        return Err(Error::Estimation(format!("window radius {radius} too small to fit a decay rate")));
    }
    if samples.iter().any(|&(_, v)| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::Estimation("correlations vanish or change sign inside the fit range".into()));
    }
    let n = samples.len() as f64;
    let (sx, sy) = samples.iter().fold((0.0, 0.0), |(a, b), &(r, v)| (a + r, b + v.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = samples
        .iter()
        .fold((0.0, 0.0), |(a, b), &(r, v)| (a + (r - mx) * (v.ln() - my), b + (r - mx) * (r - mx)));
    let slope = sxy / sxx;
    let r = radius as f64;
    if !(slope < 0.0) || -1.0 / slope > r / 2.0 {
        return Err(Error::Estimation(format!(
            "correlation length {:.3} is not resolved by window radius {radius}; k is too close to 1",
            -1.0 / slope
        )));
    }
    let rho = slope.exp();
    // magnitude extrapolated to the window edge, never below the largest sample there
    let last = samples.last().map(|s| s.1).unwrap_or(0.0);
    let fitted = (my + slope * (r - mx)).exp();
    let amp = amplitude_scale * fitted.max(last * rho.powf(r - samples.last().unwrap().0));
    let g = rho / (1.0 - rho);
    Ok(8.0 * amp * (r * g + g / (1.0 - rho)))
}

/// Bound on `sum |C|` over separations outside |dx|, |dy| <= radius, from the
/// decay of C(0, r) over the outer half of the window.
pub fn tail_estimate(table: &CorrelationTable, radius: usize) -> Result<f64> {
    require_disordered(table)?;
    require_radius(table, radius, radius)?;
    let samples = (radius.div_ceil(2)..=radius)
        .map(|r| Ok((r as f64, table.c(0, r as i64)?)))
        .collect::<Result<Vec<_>>>()?;
    geometric_tail(&samples, radius, 1.0)
}

/// Same bound for the frustrated lattice, fitted on the decaying product C(0, n) Cbar(0, n) at distance 2n.
pub fn frustrated_tail_estimate(model: &FrustratedModel, table: &CorrelationTable, radius: usize) -> Result<f64> {
    check_table(model, table)?;
    let top = radius / 2;
    require_radius(table, top, radius)?;
    let samples = (top.div_ceil(2)..=top)
        .map(|n| Ok(((2 * n) as f64, (table.c(0, n as i64)? * table.cbar(0, n as i64)?).abs())))
        .collect::<Result<Vec<_>>>()?;
    // odd classes carry at most two such products times a prefactor below 1/2
    geometric_tail(&samples, radius, 2.0)
}

#[derive(Clone, Debug)]
pub struct ChiGrid {
    pub nx: usize,
    pub ny: usize,
    /// Row-major with qy outer: `values[j * nx + i]` at (qx_i, qy_j).
    pub values: Vec<f64>,
    pub window_radius: usize,
    pub tail_bound: f64,
    pub source: String,
}

/// Grid coordinate 2 pi i / n - pi.
pub fn grid_q(i: usize, n: usize) -> f64 {
    2.0 * PI * i as f64 / n as f64 - PI
}

impl ChiGrid {
    pub fn q(&self, i: usize, j: usize) -> Wavevector {
        Wavevector { qx: grid_q(i, self.nx), qy: grid_q(j, self.ny) }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// CSV with header `qx,qy,chi`, qy outer.
    pub fn write_csv(&self, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        writeln!(out, "qx,qy,chi")?;
        for j in 0..self.ny {
            for i in 0..self.nx {
                let q = self.q(i, j);
                writeln!(out, "{:.16e},{:.16e},{:.16e}", q.qx, q.qy, self.at(i, j))?;
            }
        }
        Ok(())
    }

    /// Binary 16-bit PGM, samples scaled linearly between min and max.
    pub fn write_pgm(&self, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        write!(out, "P5\n{} {}\n65535\n", self.nx, self.ny)?;
        let (lo, hi) = (self.min(), self.max());
        let mut bytes = Vec::with_capacity(2 * self.values.len());
        for &v in &self.values {
            let s = if hi > lo { (65535.0 * (v - lo) / (hi - lo)).round() as u16 } else { 0 };
            bytes.extend_from_slice(&s.to_be_bytes());
        }
        out.write_all(&bytes)
    }
}

/// Samples chi on the nx x ny grid of the zone.
pub fn chi_grid(model: &ChiModel, nx: usize, ny: usize, radius: usize) -> Result<ChiGrid> {
    if nx < 2 || ny < 2 {
        return Err(Error::Configuration(format!("grid {nx}x{ny} must be at least 2x2")));
    }
    let weights = model.weights(radius)?;
    let tail_bound = model.tail(radius)?;
    let rows: Vec<Vec<f64>> = (0..nx).into_par_iter().map(|i| weights.row_sums(grid_q(i, nx))).collect();
    let cy: Vec<Vec<f64>> = (0..ny)
        .map(|j| (0..=radius).map(|d| (grid_q(j, ny) * d as f64).cos()).collect())
        .collect();
    let values = (0..nx * ny)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % nx, idx / nx);
            rows[i].iter().zip(&cy[j]).map(|(r, c)| r * c).sum()
        })
        .collect();
    Ok(ChiGrid {
        nx,
        ny,
        values,
        window_radius: radius,
        tail_bound,
        source: model.describe(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub q: Wavevector,
    pub value: f64,
    pub commensurate: bool,
}

/// Whether q lies within one grid cell of a multiple of 2 pi / denominator.
fn near_multiple(q: f64, cell: f64, denominator: u32) -> bool {
    let step = 2.0 * PI / f64::from(denominator);
    let off = q - (q / step).round() * step;
    off.abs() <= cell * (1.0 + 1e-9)
}

/// Strict local maxima over the eight periodic neighbours.
pub fn find_peaks(grid: &ChiGrid, denominator: u32) -> Vec<Peak> {
    let (nx, ny) = (grid.nx, grid.ny);
    let (cx, cy) = (2.0 * PI / nx as f64, 2.0 * PI / ny as f64);
    let mut peaks = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let v = grid.at(i, j);
            let strict = (-1i64..=1).all(|dj| {
                (-1i64..=1).all(|di| {
                    if di == 0 && dj == 0 {
                        return true;
                    }
                    let ii = (i as i64 + di).rem_euclid(nx as i64) as usize;
                    let jj = (j as i64 + dj).rem_euclid(ny as i64) as usize;
                    (ii == i && jj == j) || grid.at(ii, jj) < v
                })
            });
            if strict {
                let q = grid.q(i, j);
                peaks.push(Peak {
                    q,
                    value: v,
                    commensurate: near_multiple(q.qx, cx, denominator) && near_multiple(q.qy, cy, denominator),
                });
            }
        }
    }
    peaks
}

/// Peak report with header `qx,qy,value,commensurate`.
pub fn write_peaks_csv(peaks: &[Peak], out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
    writeln!(out, "qx,qy,value,commensurate")?;
    for p in peaks {
        writeln!(out, "{:.16e},{:.16e},{:.16e},{}", p.q.qx, p.q.qy, p.value, p.commensurate)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::build_table;

    #[test]
    fn single_term_window() {
        let t = build_table(0.5, 4, 53).unwrap();
        assert_eq!(chi_uniform(&t, Wavevector::new(0.0, 0.0), 0).unwrap(), 1.0);
        assert!(chi_uniform(&t, Wavevector::new(0.0, 0.0), 5).is_err());
    }

    #[test]
    fn wrapping() {
        let q = Wavevector::new(3.0 * PI, -0.5);
        assert!((q.qx + PI).abs() < 1e-15);
        assert!((Wavevector::new(0.3 + 2.0 * PI, 0.0).qx - 0.3).abs() < 1e-15);
    }

    #[test]
    fn gauge_identity_and_shift() {
        let t = build_table(0.5, 8, 53).unwrap();
        let ones = vec![1.0; 9];
        let alt: Vec<f64> = (0..9).map(|d| if d % 2 == 0 { 1.0 } else { -1.0 }).collect();
        for &(qx, qy) in &[(0.3, -1.2), (2.0, 0.7)] {
            let u = chi_uniform(&t, Wavevector::new(qx, qy), 8).unwrap();
            let g = chi_column_gauge(&t, &ones, Wavevector::new(qx, qy), 8).unwrap();
            assert!((u - g).abs() < 1e-12);
            let shifted = chi_uniform(&t, Wavevector::new(qx, qy + PI), 8).unwrap();
            let a = chi_column_gauge(&t, &alt, Wavevector::new(qx, qy), 8).unwrap();
            assert!((shifted - a).abs() < 1e-12);
        }
        assert!(chi_column_gauge(&t, &ones[..5], Wavevector::new(0.0, 0.0), 8).is_err());
    }

    #[test]
    fn tail_guards() {
        let t = build_table(0.1, 20, 256).unwrap();
        assert!(tail_estimate(&t, 20).unwrap() <= 1e-10);
        let near = build_table(1.0 - 1e-6, 6, 256).unwrap();
        assert!(matches!(tail_estimate(&near, 6), Err(Error::Estimation(_))));
    }

    #[test]
    fn constant_grid_has_no_peaks() {
        let g = ChiGrid { nx: 4, ny: 4, values: vec![2.0; 16], window_radius: 0, tail_bound: 0.0, source: String::new() };
        assert!(find_peaks(&g, DEFAULT_DENOMINATOR).is_empty());
        let mut pgm = Vec::new();
        g.write_pgm(&mut pgm).unwrap();
        assert!(pgm[pgm.len() - 32..].iter().all(|&b| b == 0));
    }

    #[test]
    fn uniform_peak_at_origin() {
        let t = build_table(0.5, 10, 53).unwrap();
        let g = chi_grid(&ChiModel::Uniform(&t), 16, 16, 10).unwrap();
        let p = find_peaks(&g, DEFAULT_DENOMINATOR);
        assert_eq!(p.len(), 1);
        assert!(p[0].q.qx.abs() < 1e-15 && p[0].q.qy.abs() < 1e-15 && p[0].commensurate);
    }
}
