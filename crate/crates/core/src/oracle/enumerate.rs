//! Exhaustive Boltzmann sums over small explicit lattices.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const MAX_SITES: usize = 20;

/// One bond with its reduced coupling; positive is ferromagnetic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub coupling: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Boundary {
    pub periodic_x: bool,
    pub periodic_y: bool,
}

/// A finite Ising instance; site (x, y) has index y * width + x.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteLatticeSpec {
    pub width: usize,
    pub height: usize,
    pub bonds: Vec<Bond>,
    pub boundary: Boundary,
}

impl FiniteLatticeSpec {
    pub fn new(width: usize, height: usize, bonds: Vec<Bond>, boundary: Boundary) -> Result<Self> {
        let n = width * height;
        if n == 0 {
            return Err(Error::Configuration("lattice has no sites".into()));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for bond in &bonds {
            if bond.a >= n || bond.b >= n {
                return Err(Error::Configuration(format!("bond {}-{} leaves the lattice", bond.a, bond.b)));
            }
            if !bond.coupling.is_finite() {
                return Err(Error::Configuration("non-finite coupling".into()));
            }
            let (ra, rb) = (find(&mut parent, bond.a), find(&mut parent, bond.b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        if (0..n).any(|i| find(&mut parent, i) != root) {
            return Err(Error::Configuration("bond graph is not connected".into()));
        }
        Ok(Self { width, height, bonds, boundary })
    }

    /// Nearest-neighbour square lattice; `coupling(x, y, horizontal)` gives the bond leaving (x, y).
    pub fn square(
        width: usize,
        height: usize,
        boundary: Boundary,
        coupling: impl Fn(usize, usize, bool) -> f64,
    ) -> Result<Self> {
        let mut bonds = Vec::new();
        let site = |x: usize, y: usize| y * width + x;
        for y in 0..height {
            for x in 0..width {
                if x + 1 < width || (boundary.periodic_x && width > 1) {
                    bonds.push(Bond { a: site(x, y), b: site((x + 1) % width, y), coupling: coupling(x, y, true) });
                }
                if y + 1 < height || (boundary.periodic_y && height > 1) {
                    bonds.push(Bond { a: site(x, y), b: site(x, (y + 1) % height), coupling: coupling(x, y, false) });
                }
            }
        }
        Self::new(width, height, bonds, boundary)
    }

    pub fn sites(&self) -> usize {
        self.width * self.height
    }
}

/// <s_a s_b> by summing all 2^N configurations.
pub fn enumerate_correlation(lat: &FiniteLatticeSpec, site_a: usize, site_b: usize) -> Result<f64> {
    let n = lat.sites();
    if n > MAX_SITES {
        return Err(Error::Capacity(format!("{n} sites exceed the enumeration limit of {MAX_SITES}")));
    }
    if site_a >= n || site_b >= n {
        return Err(Error::Range(format!("site index outside 0..{n}")));
    }
    if site_a == site_b {
        return Ok(1.0);
    }
    let shift: f64 = lat.bonds.iter().map(|b| b.coupling.abs()).sum();
    let (num, den) = (0u64..1 << n)
        .into_par_iter()
        .map(|config| {
            let s = |i: usize| if (config >> i) & 1 == 0 { 1.0 } else { -1.0 };
            let e: f64 = lat.bonds.iter().map(|b| b.coupling * s(b.a) * s(b.b)).sum();
            let w = (e - shift).exp();
            (w * s(site_a) * s(site_b), w)
        })
        .reduce(|| (0.0, 0.0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bond() {
        let lat = FiniteLatticeSpec::new(2, 1, vec![Bond { a: 0, b: 1, coupling: 0.4 }], Boundary::default()).unwrap();
        assert!((enumerate_correlation(&lat, 0, 1).unwrap() - 0.4f64.tanh()).abs() < 1e-15);
        assert_eq!(enumerate_correlation(&lat, 1, 1).unwrap(), 1.0);
    }

    #[test]
    fn two_by_two_torus() {
        // every neighbour pair is joined twice, so this is a four-ring at coupling 2K
        let k = 0.3;
        let torus = Boundary { periodic_x: true, periodic_y: true };
        let lat = FiniteLatticeSpec::square(2, 2, torus, |_, _, _| k).unwrap();
        assert_eq!(lat.bonds.len(), 8);
        let t = (2.0 * k).tanh();
        let nn = (t + t.powi(3)) / (1.0 + t.powi(4));
        let diag = 2.0 * t * t / (1.0 + t.powi(4));
        assert!((enumerate_correlation(&lat, 0, 1).unwrap() - nn).abs() < 1e-14);
        assert!((enumerate_correlation(&lat, 0, 3).unwrap() - diag).abs() < 1e-14);
    }

    #[test]
    fn guards() {
        let lat = FiniteLatticeSpec::square(5, 5, Boundary::default(), |_, _, _| 0.1).unwrap();
        assert!(matches!(enumerate_correlation(&lat, 0, 1), Err(Error::Capacity(_))));
        assert!(FiniteLatticeSpec::new(3, 1, vec![Bond { a: 0, b: 1, coupling: 1.0 }], Boundary::default()).is_err());
    }
}
