//! Row-to-row transfer matrices on cylinders of circumference W <= 16.
//!
//! The transfer matrix of one row is the diagonal Boltzmann factor of its
//! horizontal bonds times a Kronecker product of 2x2 vertical-bond factors.
//! It is never stored: both factors are applied to state vectors directly,
//! which is the same operator as the dense 2^W x 2^W matrix.

use crate::error::{Error, Result};

pub const MAX_WIDTH: usize = 16;

/// Couplings of one row: `horizontal[x]` joins (x, y)-(x+1 mod W, y), `vertical[x]` joins (x, y)-(x, y+1).
#[derive(Clone, Debug, PartialEq)]
pub struct RowCouplings {
    pub horizontal: Vec<f64>,
    pub vertical: Vec<f64>,
}

/// Boundary condition around the circumference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seam {
    Periodic,
    /// The bond from column W-1 to column 0 has its sign reversed in every row.
    Antiperiodic,
}

/// A cylinder whose rows repeat with period `rows.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderSpec {
    pub width: usize,
    pub rows: Vec<RowCouplings>,
}

impl CylinderSpec {
    pub fn uniform(width: usize, horizontal: f64, vertical: f64) -> Self {
        Self {
            width,
            rows: vec![RowCouplings {
                horizontal: vec![horizontal; width],
                vertical: vec![vertical; width],
            }],
        }
    }

    /// Rows given by a sign pattern: coupling(x, y) returns (horizontal, vertical) for the bonds leaving (x, y).
    pub fn patterned(width: usize, period: usize, coupling: impl Fn(usize, usize) -> (f64, f64)) -> Self {
        let rows = (0..period)
            .map(|y| {
                let (horizontal, vertical) = (0..width).map(|x| coupling(x, y)).unzip();
                RowCouplings { horizontal, vertical }
            })
            .collect();
        Self { width, rows }
    }

    pub fn with_seam(&self, seam: Seam) -> Self {
        let mut out = self.clone();
        if seam == Seam::Antiperiodic {
            for row in &mut out.rows {
                let last = row.horizontal.len() - 1;
                row.horizontal[last] = -row.horizontal[last];
            }
        }
        out
    }

    pub fn period(&self) -> usize {
        self.rows.len()
    }

    fn validate(&self) -> Result<()> {
        if self.width < 2 || self.width > MAX_WIDTH {
            return Err(Error::Capacity(format!(
                "cylinder width {} outside 2..={MAX_WIDTH}",
                self.width
            )));
        }
        if self.rows.is_empty() {
            return Err(Error::Configuration("cylinder needs at least one row".into()));
        }
        for row in &self.rows {
            if row.horizontal.len() != self.width || row.vertical.len() != self.width {
                return Err(Error::Configuration("row coupling length differs from width".into()));
            }
            if row.horizontal.iter().chain(&row.vertical).any(|c| !c.is_finite()) {
                return Err(Error::Configuration("non-finite coupling".into()));
            }
        }
        Ok(())
    }
}

/// Local modifications inserted into an otherwise uniform stack of rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Defect {
    /// Spin insertions (x, y).
    pub spins: Vec<(i64, i64)>,
    /// Horizontal bonds (x, y)-(x+1, y) whose sign is reversed.
    pub horizontal_flips: Vec<(i64, i64)>,
    /// Vertical bonds (x, y)-(x, y+1) whose sign is reversed.
    pub vertical_flips: Vec<(i64, i64)>,
}

impl Defect {
    fn rows(&self) -> Option<(i64, i64)> {
        let ys = self
            .spins
            .iter()
            .chain(&self.horizontal_flips)
            .chain(&self.vertical_flips)
            .map(|&(_, y)| y);
        let lo = ys.clone().min()?;
        let hi = ys.max()?;
        Some((lo, hi))
    }
}

#[inline]
fn spin(state: usize, x: usize) -> f64 {
    if (state >> x) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn row_diagonal(width: usize, horizontal: &[f64]) -> Vec<f64> {
    (0..1usize << width)
        .map(|s| {
            let e: f64 = (0..width)
                .map(|x| horizontal[x] * spin(s, x) * spin(s, (x + 1) % width))
                .sum();
            e.exp()
        })
        .collect()
}

fn apply_vertical(v: &mut [f64], vertical: &[f64]) {
    for (x, &c) in vertical.iter().enumerate() {
        let (same, diff) = (c.exp(), (-c).exp());
        let bit = 1usize << x;
        for s in 0..v.len() {
            if s & bit == 0 {
                let (a, b) = (v[s], v[s | bit]);
                v[s] = same * a + diff * b;
                v[s | bit] = diff * a + same * b;
            }
        }
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    n
}

/// A cylinder with its dominant left and right vectors.
#[derive(Clone, Debug)]
pub struct Cylinder {
    spec: CylinderSpec,
    diagonals: Vec<Vec<f64>>,
    left: Vec<f64>,
    right: Vec<f64>,
    /// Last power-iteration change; large values flag a near-degenerate spectrum.
    pub convergence: f64,
}

impl Cylinder {
    pub fn new(spec: CylinderSpec) -> Result<Self> {
        spec.validate()?;
        let diagonals = spec.rows.iter().map(|r| row_diagonal(spec.width, &r.horizontal)).collect();
        let dim = 1usize << spec.width;
        let mut cyl = Self {
            spec,
            diagonals,
            left: vec![1.0; dim],
            right: vec![1.0; dim],
            convergence: f64::INFINITY,
        };
        cyl.power_iterate();
        Ok(cyl)
    }

    pub fn spec(&self) -> &CylinderSpec {
        &self.spec
    }

    /// Whether power iteration failed to settle, as in an ordered phase.
    pub fn degenerate(&self) -> bool {
        self.convergence > 1e-10
    }

    fn row_index(&self, y: i64) -> usize {
        y.rem_euclid(self.spec.period() as i64) as usize
    }

    fn step(&self, v: &mut [f64], y: i64) {
        let r = self.row_index(y);
        v.iter_mut().zip(&self.diagonals[r]).for_each(|(a, d)| *a *= d);
        apply_vertical(v, &self.spec.rows[r].vertical);
    }

    fn step_back(&self, v: &mut [f64], y: i64) {
        let r = self.row_index(y);
        apply_vertical(v, &self.spec.rows[r].vertical);
        v.iter_mut().zip(&self.diagonals[r]).for_each(|(a, d)| *a *= d);
    }

    fn power_iterate(&mut self) {
        let p = self.spec.period() as i64;
        normalize(&mut self.left);
        normalize(&mut self.right);
        for it in 0..20000 {
            let mut l = self.left.clone();
            for y in 0..p {
                self.step(&mut l, y);
            }
            normalize(&mut l);
            let mut r = self.right.clone();
            for y in (0..p).rev() {
                self.step_back(&mut r, y);
            }
            normalize(&mut r);
            let change = l
                .iter()
                .zip(&self.left)
                .chain(r.iter().zip(&self.right))
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            self.left = l;
            self.right = r;
            self.convergence = change;
            if change < 1e-15 && it > 4 {
                break;
            }
        }
    }

    /// Ratio of the defect-weighted to the plain partition function of the infinite cylinder.
    pub fn expectation(&self, defect: &Defect) -> f64 {
        let Some((lo, hi)) = defect.rows() else {
            return 1.0;
        };
        let w = self.spec.width as i64;
        let p = self.spec.period() as i64;
        let start = lo.div_euclid(p) * p;
        let end = (hi.div_euclid(p) + 1) * p;
        let mut num = self.left.clone();
        let mut den = self.left.clone();
        let bit = |x: i64| x.rem_euclid(w) as usize;
        for y in start..end {
            let r = self.row_index(y);
            for &(x, yy) in &defect.spins {
                if yy == y {
                    let b = bit(x);
                    num.iter_mut().enumerate().for_each(|(s, a)| *a *= spin(s, b));
                }
            }
            let hflips: Vec<usize> = defect
                .horizontal_flips
                .iter()
                .filter(|&&(_, yy)| yy == y)
                .map(|&(x, _)| bit(x))
                .collect();
            let vflips: Vec<usize> = defect
                .vertical_flips
                .iter()
                .filter(|&&(_, yy)| yy == y)
                .map(|&(x, _)| bit(x))
                .collect();
            if hflips.is_empty() && vflips.is_empty() {
                self.step(&mut num, y);
            } else {
                let mut row = self.spec.rows[r].clone();
                for &x in &hflips {
                    row.horizontal[x] = -row.horizontal[x];
                }
                for &x in &vflips {
                    row.vertical[x] = -row.vertical[x];
                }
                let diag = if hflips.is_empty() {
                    self.diagonals[r].clone()
                } else {
                    row_diagonal(self.spec.width, &row.horizontal)
                };
                num.iter_mut().zip(&diag).for_each(|(a, d)| *a *= d);
                apply_vertical(&mut num, &row.vertical);
            }
            self.step(&mut den, y);
            let n = normalize(&mut den);
            num.iter_mut().for_each(|a| *a /= n);
        }
        let dot = |v: &[f64]| v.iter().zip(&self.right).map(|(a, b)| a * b).sum::<f64>();
        dot(&num) / dot(&den)
    }

    /// <s(a) s(b)>.
    pub fn spin_correlation(&self, a: (i64, i64), b: (i64, i64)) -> f64 {
        if a == b {
            return 1.0;
        }
        self.expectation(&Defect {
            spins: vec![a, b],
            ..Defect::default()
        })
    }

    /// Correlation of disorder operators on the plaquettes (x0+1/2, 1/2) and (x0+m+1/2, n+1/2).
    ///
    /// The string crosses the vertical bonds of row 0 at columns x0+1..=x0+m, then
    /// the horizontal bonds at column x0+m in rows 1..=n. By duality this is the
    /// spin correlation of the dual lattice at separation (m, n).
    pub fn disorder_correlation(&self, x0: i64, m: i64, n: i64) -> f64 {
        if m == 0 && n == 0 {
            return 1.0;
        }
        let (m, n) = (m.abs(), n.abs());
        let defect = Defect {
            spins: vec![],
            vertical_flips: (x0 + 1..=x0 + m).map(|x| (x, 0)).collect(),
            horizontal_flips: (1..=n).map(|y| (x0 + m, y)).collect(),
        };
        self.expectation(&defect)
    }
}

/// <s(0,0) s(dx,dy)> on an infinite uniform or patterned cylinder, with the pair centred away from the seam.
pub fn cylinder_correlation(spec: &CylinderSpec, delta: (i64, i64)) -> Result<f64> {
    let cyl = Cylinder::new(spec.clone())?;
    let w = spec.width as i64;
    if delta.0.abs() >= w {
        return Err(Error::Range(format!("separation {} does not fit circumference {w}", delta.0)));
    }
    let x0 = (w - delta.0) / 2 - 1 + if delta.0 < 0 { 1 } else { 0 };
    Ok(cyl.spin_correlation((x0, 0), (x0 + delta.0, delta.1)))
}

/// <s(a) s(b)> on a finite W x L torus by explicit traces of the row transfer matrix.
pub fn torus_correlation(spec: &CylinderSpec, length: usize, a: (usize, usize), b: (usize, usize)) -> Result<f64> {
    spec.validate()?;
    if spec.width > 10 {
        return Err(Error::Capacity("torus traces are limited to width 10".into()));
    }
    if length == 0 || !length.is_multiple_of(spec.period()) {
        return Err(Error::Configuration("torus length must be a positive multiple of the row period".into()));
    }
    let cyl = Cylinder {
        diagonals: spec.rows.iter().map(|r| row_diagonal(spec.width, &r.horizontal)).collect(),
        spec: spec.clone(),
        left: vec![],
        right: vec![],
        convergence: 0.0,
    };
    let dim = 1usize << spec.width;
    let (mut num, mut den) = (0.0, 0.0);
    for start in 0..dim {
        let mut v = vec![0.0; dim];
        v[start] = 1.0;
        let mut u = v.clone();
        for y in 0..length as i64 {
            for &(x, yy) in &[a, b] {
                if yy as i64 == y {
                    v.iter_mut().enumerate().for_each(|(s, val)| *val *= spin(s, x));
                }
            }
            cyl.step(&mut v, y);
            cyl.step(&mut u, y);
        }
        num += v[start];
        den += u[start];
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_separations() {
        let spec = CylinderSpec::uniform(6, 0.3, 0.3);
        assert_eq!(cylinder_correlation(&spec, (0, 0)).unwrap(), 1.0);
        let weak = CylinderSpec::uniform(6, 1e-3, 1e-3);
        let nn = cylinder_correlation(&weak, (1, 0)).unwrap();
        assert!((nn - (1e-3f64).tanh()).abs() < 1e-8);
    }

    #[test]
    fn one_dimensional_limit() {
        // with no horizontal bonds each column is an independent chain
        let spec = CylinderSpec::uniform(4, 0.0, 0.7);
        let c = cylinder_correlation(&spec, (0, 3)).unwrap();
        assert!((c - 0.7f64.tanh().powi(3)).abs() < 1e-13);
        assert!(cylinder_correlation(&spec, (1, 0)).unwrap().abs() < 1e-14);
    }

    #[test]
    fn rejects_wide_cylinders() {
        assert!(Cylinder::new(CylinderSpec::uniform(17, 0.1, 0.1)).is_err());
    }

    #[test]
    fn symmetric_under_exchange() {
        let cyl = Cylinder::new(CylinderSpec::uniform(8, 0.35, 0.35)).unwrap();
        let a = cyl.spin_correlation((2, 0), (4, 3));
        let b = cyl.spin_correlation((4, 3), (2, 0));
        let c = cyl.spin_correlation((3, 0), (1, 3));
        assert!((a - b).abs() < 1e-13 && (a - c).abs() < 1e-12);
    }
}
