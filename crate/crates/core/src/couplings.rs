//! Rapidity parameterization of Ising couplings and Kramers-Wannier duality.
//!
//! A bond crossed by rapidity lines u1 and u2 has
//! sinh 2K = k sc(u1 - u2, k') horizontally and sinh 2K' = cs(u1 - u2, k')
//! vertically, so the product is always k.

use crate::elliptic::{jacobi_elliptic, Modulus};
use crate::error::{domain, Result};

/// Horizontal and vertical reduced couplings (beta J) of one lattice cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingPair {
    pub horizontal: f64,
    pub vertical: f64,
}

impl CouplingPair {
    pub fn product_of_sinh(&self) -> f64 {
        (2.0 * self.horizontal).sinh() * (2.0 * self.vertical).sinh()
    }
}

/// An oriented line carrying a rapidity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RapidityLine {
    pub id: i64,
    pub u: f64,
    pub reversed: bool,
}

impl RapidityLine {
    pub fn new(id: i64, u: f64) -> Self {
        Self { id, u, reversed: false }
    }

    /// u, shifted by K(k') when the line runs against the reference orientation.
    pub fn effective(&self, modulus: &Modulus) -> f64 {
        if self.reversed {
            self.u + modulus.complement_quarter_period
        } else {
            self.u
        }
    }
}

/// Couplings for the rapidity difference u1 - u2, restricted to the ferromagnetic strip (0, K(k')).
pub fn coupling_pair(u1: f64, u2: f64, modulus: &Modulus) -> Result<CouplingPair> {
    let diff = u1 - u2;
    let strip = modulus.complement_quarter_period;
    if !(diff > 0.0) {
        return domain(format!("rapidity difference {diff} must exceed 0"));
    }
    if !(diff < strip) {
        return domain(format!("rapidity difference {diff} must stay below K(k') = {strip}"));
    }
    let j = jacobi_elliptic(diff, modulus.complement)?;
    let sc = j.sc()?;
    let cs = j.cs()?;
    Ok(CouplingPair {
        horizontal: 0.5 * (modulus.k * sc).asinh(),
        vertical: 0.5 * cs.asinh(),
    })
}

/// Reverses the orientation of a rapidity line.
pub fn orientation_flip(line: RapidityLine, _modulus: &Modulus) -> RapidityLine {
    RapidityLine { reversed: !line.reversed, ..line }
}

/// Couplings between two oriented lines.
///
/// When exactly one line is reversed the shifted difference leaves the strip,
/// and the lines swap roles: the cell is read with the other diagonal.
pub fn coupling_between(a: &RapidityLine, b: &RapidityLine, modulus: &Modulus) -> Result<CouplingPair> {
    let (ua, ub) = (a.effective(modulus), b.effective(modulus));
    if a.reversed != b.reversed {
        coupling_pair(ub, ua, modulus)
    } else {
        coupling_pair(ua, ub, modulus)
    }
}

/// Kramers-Wannier dual coupling: sinh 2K sinh 2K* = 1.
pub fn kw_dual(coupling: f64) -> Result<f64> {
    if !(coupling > 0.0) || !coupling.is_finite() {
        return domain(format!("dual coupling needs K > 0, got {coupling}"));
    }
    Ok(0.5 * (1.0 / (2.0 * coupling).sinh()).asinh())
}

/// Coupling with sinh 2K = s.
pub fn coupling_from_sinh(s: f64) -> f64 {
    0.5 * s.asinh()
}
