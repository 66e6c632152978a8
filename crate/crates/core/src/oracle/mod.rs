//! Independent brute-force checks: exhaustive enumeration, cylinder transfer
//! matrices with width extrapolation, and identity residual reports.

pub mod cylinder;
pub mod enumerate;
pub mod extrapolate;
pub mod quadrature;
pub mod verify;

use rayon::prelude::*;

use crate::couplings::coupling_from_sinh;
use crate::error::{Error, Result};
use crate::frustrated::{FrustratedModel, SiteParity, Version};
use cylinder::{Cylinder, CylinderSpec, Seam};
pub use extrapolate::{extrapolate, Extrapolated};

/// Widths used when nothing else is requested.
pub const DEFAULT_WIDTHS: [usize; 4] = [10, 12, 14, 16];

/// Extrapolated correlations of the disordered model and its dual on 0 <= m, n <= radius.
#[derive(Clone, Debug)]
pub struct OracleTable {
    pub k: f64,
    pub radius: usize,
    pub widths: Vec<usize>,
    spin: Vec<Extrapolated>,
    dual: Vec<Extrapolated>,
}

impl OracleTable {
    fn index(&self, m: i64, n: i64) -> Result<usize> {
        let (m, n) = (m.unsigned_abs() as usize, n.unsigned_abs() as usize);
        if m > self.radius || n > self.radius {
            return Err(Error::Range(format!("({m}, {n}) outside oracle radius {}", self.radius)));
        }
        Ok(m * (self.radius + 1) + n)
    }

    /// Disordered-model correlation at separation (m, n).
    pub fn spin(&self, m: i64, n: i64) -> Result<Extrapolated> {
        Ok(self.spin[self.index(m, n)?])
    }

    /// Dual (ordered) model correlation at separation (m, n).
    pub fn dual(&self, m: i64, n: i64) -> Result<Extrapolated> {
        Ok(self.dual[self.index(m, n)?])
    }
}

/// Raw periodic/antiperiodic-averaged values at one width, as (spin, dual) grids.
pub fn uniform_width_values(k: f64, radius: usize, width: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::Domain(format!("oracle modulus k = {k} must lie in (0, 1)")));
    }
    if radius + 2 > width {
        return Err(Error::Range(format!("radius {radius} too large for circumference {width}")));
    }
    let coupling = coupling_from_sinh(k.sqrt());
    let base = CylinderSpec::uniform(width, coupling, coupling);
    let cyls = [Seam::Periodic, Seam::Antiperiodic]
        .par_iter()
        .map(|&s| Cylinder::new(base.with_seam(s)))
        .collect::<Result<Vec<_>>>()?;
    let side = radius + 1;
    let cells: Vec<(f64, f64)> = (0..side * side)
        .into_par_iter()
        .map(|i| {
            let (m, n) = ((i / side) as i64, (i % side) as i64);
            let x0 = width as i64 / 2 - 1 - m / 2;
            let mut s = 0.0;
            let mut d = 0.0;
            for c in &cyls {
                s += c.spin_correlation((x0, 0), (x0 + m, n));
                d += c.disorder_correlation(x0, m, n);
            }
            (s / 2.0, d / 2.0)
        })
        .collect();
    Ok(cells.into_iter().unzip())
}

/// Oracle table at modulus k: cylinder values at each width, extrapolated in width.
pub fn uniform_correlations(k: f64, radius: usize, widths: &[usize]) -> Result<OracleTable> {
    let per_width = widths
        .iter()
        .map(|&w| uniform_width_values(k, radius, w))
        .collect::<Result<Vec<_>>>()?;
    let cells = (radius + 1) * (radius + 1);
    let fit = |dual: bool| -> Result<Vec<Extrapolated>> {
        (0..cells)
            .map(|i| {
                let series: Vec<(usize, f64)> =
                    widths.iter().zip(&per_width).map(|(&w, v)| (w, if dual { v.1[i] } else { v.0[i] })).collect();
                extrapolate(&series).map_err(|e| {
                    Error::Extrapolation(format!("at ({}, {}): {e}", i / (radius + 1), i % (radius + 1)))
                })
            })
            .collect()
    };
    Ok(OracleTable {
        k,
        radius,
        widths: widths.to_vec(),
        spin: fit(false)?,
        dual: fit(true)?,
    })
}

/// Extrapolated pair correlations of the fully frustrated lattice for every base parity, |dx|, |dy| <= radius.
#[derive(Clone, Debug)]
pub struct FrustratedOracle {
    pub model: FrustratedModel,
    pub radius: usize,
    pub widths: Vec<usize>,
    values: Vec<Extrapolated>,
}

impl FrustratedOracle {
    fn index(&self, dx: i64, dy: i64, base: SiteParity) -> Result<usize> {
        let r = self.radius as i64;
        if dx.abs() > r || dy.abs() > r {
            return Err(Error::Range(format!("({dx}, {dy}) outside oracle radius {r}")));
        }
        let side = (2 * r + 1) as usize;
        let b = usize::from(base.column_odd) + 2 * usize::from(base.row_odd);
        Ok((b * side + (dy + r) as usize) * side + (dx + r) as usize)
    }

    pub fn correlation(&self, dx: i64, dy: i64, base: SiteParity) -> Result<Extrapolated> {
        Ok(self.values[self.index(dx, dy, base)?])
    }
}

/// The frustrated lattice on a cylinder of the given width, with the chosen seam.
pub fn frustrated_cylinder(model: &FrustratedModel, width: usize, seam: Seam) -> Result<Cylinder> {
    let k = model.coupling();
    let period = match model.version {
        Version::Checkerboard => 2,
        Version::Columnar => 1,
    };
    let version = model.version;
    let spec = CylinderSpec::patterned(width, period, |x, y| {
        (k, version.bond_sign(x as i64, y as i64, false) * k)
    });
    Cylinder::new(spec.with_seam(seam))
}

/// Seam-averaged values at one width, in [`FrustratedOracle`] order.
pub fn frustrated_width_values(model: &FrustratedModel, radius: usize, width: usize) -> Result<Vec<f64>> {
    if !width.is_multiple_of(2) || 2 * radius + 2 > width {
        return Err(Error::Range(format!("radius {radius} needs an even circumference above {}", 2 * radius + 1)));
    }
    let cyls = [Seam::Periodic, Seam::Antiperiodic]
        .par_iter()
        .map(|&s| frustrated_cylinder(model, width, s))
        .collect::<Result<Vec<_>>>()?;
    let r = radius as i64;
    let side = (2 * r + 1) as usize;
    Ok((0..4 * side * side)
        .into_par_iter()
        .map(|i| {
            let b = SiteParity::ALL[i / (side * side)];
            let dy = ((i / side) % side) as i64 - r;
            let dx = (i % side) as i64 - r;
            // x0 of the requested parity with the pair away from the seam
            let mut x0 = width as i64 / 2 - 1 - dx / 2;
            if (x0.rem_euclid(2) == 1) != b.column_odd {
                x0 -= 1;
            }
            let y0 = i64::from(b.row_odd);
            cyls.iter().map(|c| c.spin_correlation((x0, y0), (x0 + dx, y0 + dy))).sum::<f64>() / 2.0
        })
        .collect())
}

/// Oracle for the frustrated lattice, extrapolated in cylinder width.
pub fn frustrated_correlations(model: &FrustratedModel, radius: usize, widths: &[usize]) -> Result<FrustratedOracle> {
    let per_width = widths
        .iter()
        .map(|&w| frustrated_width_values(model, radius, w))
        .collect::<Result<Vec<_>>>()?;
    let values = (0..per_width[0].len())
        .map(|i| {
            let series: Vec<(usize, f64)> = widths.iter().zip(&per_width).map(|(&w, v)| (w, v[i])).collect();
            extrapolate(&series)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrustratedOracle {
        model: *model,
        radius,
        widths: widths.to_vec(),
        values,
    })
}
