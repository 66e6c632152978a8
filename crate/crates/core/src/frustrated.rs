//! The fully frustrated square lattice.
//!
//! Summing out every other spin of a plaquette sublattice leaves an
//! eight-vertex model at the free-fermion point. A partial duality splits
//! that into two decoupled Ising models at mutually dual temperatures, so the
//! pair correlations of the frustrated model are products of a [`CorrelationTable`]'s
//! `C` and `Cbar` entries.
//!
//! Two gauge-equivalent sign layouts are supported. In both, every
//! horizontal bond is ferromagnetic; the vertical bond from (x, y) to
//! (x, y+1) carries sign `-(-1)^(x+y)` in the checkerboard layout and
//! `(-1)^x` in the columnar one.

use std::io::Write;

use crate::couplings::coupling_from_sinh;
use crate::corr::{CorrelationTable, Correlator};
use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Version {
    /// Vertical signs alternate in both directions.
    Checkerboard,
    /// Vertical signs alternate from column to column only.
    Columnar,
}

impl Version {
    /// Sign of the bond leaving (x, y) to the right (`horizontal`) or upward.
    pub fn bond_sign(&self, x: i64, y: i64, horizontal: bool) -> f64 {
        if horizontal {
            return 1.0;
        }
        let odd = |v: i64| v.rem_euclid(2) == 1;
        match self {
            Version::Checkerboard => {
                if odd(x + y) {
                    1.0
                } else {
                    -1.0
                }
            }
            Version::Columnar => {
                if odd(x) {
                    -1.0
                } else {
                    1.0
                }
            }
        }
    }

    /// Row-dependent spin flip mapping the columnar layout onto the checkerboard one:
    /// `+` for y mod 4 in {1, 2}.
    pub fn gauge_sign(y: i64) -> f64 {
        match y.rem_euclid(4) {
            1 | 2 => 1.0,
            _ => -1.0,
        }
    }
}

/// Coupling strength S = sinh(2J / k_B T) and the sign layout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrustratedModel {
    pub strength: f64,
    pub version: Version,
}

impl FrustratedModel {
    pub fn new(strength: f64, version: Version) -> Result<Self> {
        check_strength(strength)?;
        Ok(Self { strength, version })
    }

    /// Elliptic modulus of the two decoupled Ising models.
    pub fn modulus(&self) -> f64 {
        let r = sqrt_modulus(self.strength);
        r * r
    }

    /// Reduced coupling J / k_B T of every bond.
    pub fn coupling(&self) -> f64 {
        coupling_from_sinh(self.strength)
    }

    /// S / (2 sqrt(2 S^2 + 1)), the weight of the odd-distance classes.
    pub fn odd_prefactor(&self) -> f64 {
        let s = self.strength;
        s / (2.0 * (2.0 * s * s + 1.0).sqrt())
    }
}

fn check_strength(s: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return domain(format!("coupling strength S = {s} must be positive and finite"));
    }
    Ok(())
}

fn sqrt_modulus(s: f64) -> f64 {
    let s2 = s * s;
    s2 / (s2 + 1.0 + (2.0 * s2 + 1.0).sqrt())
}

/// Baxter weights of the decimated model and its reduced couplings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EightVertexWeights {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Coupling of the (2, 4) diagonal.
    pub k_hat: f64,
    /// Coupling of the (1, 3) diagonal.
    pub k_hat_prime: f64,
    /// Four-spin coupling.
    pub k_hat4: f64,
}

/// Weights after decimation, normalized so that c = 1.
pub fn eight_vertex_weights(s: f64) -> Result<EightVertexWeights> {
    check_strength(s)?;
    let s2 = s * s;
    let root = (2.0 * s2 + 1.0).sqrt();
    Ok(EightVertexWeights {
        a: (s2 + 1.0).sqrt(),
        b: (s2 + 1.0).sqrt(),
        c: 1.0,
        d: root,
        k_hat: -0.125 * (2.0 * s2).ln_1p(),
        k_hat_prime: 0.125 * (2.0 * s2).ln_1p(),
        k_hat4: 0.25 * ((s2 + 1.0) / root).ln(),
    })
}

impl EightVertexWeights {
    /// a^2 + b^2 - c^2 - d^2.
    pub fn free_fermion_defect(&self) -> f64 {
        self.a * self.a + self.b * self.b - self.c * self.c - self.d * self.d
    }
}

/// <s0> of a decimated spin given its four neighbours, the fourth across the antiferromagnetic bond.
pub fn decimated_spin(s: f64, spins: [i8; 4]) -> Result<f64> {
    check_strength(s)?;
    if spins.iter().any(|&v| v != 1 && v != -1) {
        return domain(format!("spins must be +1 or -1, got {spins:?}"));
    }
    let [s1, s2, s3, s4] = spins.map(f64::from);
    let s2_ = s * s;
    let sum = s1 + s3 + s2 - s4;
    let four = s1 * s3 * s2 * s4;
    Ok(s * sum / (2.0 * (s2_ + 1.0).sqrt()) * (1.0 - s2_ * (1.0 - four) / (2.0 * (2.0 * s2_ + 1.0))))
}

/// Couplings after reversing the sign of every s2 s4 product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartialDualCouplings {
    pub k_tilde: f64,
    pub k_tilde_prime: f64,
    pub k_tilde4: f64,
}

pub fn partial_dual(s: f64) -> Result<PartialDualCouplings> {
    let w = eight_vertex_weights(s)?;
    Ok(PartialDualCouplings {
        k_tilde: -w.k_hat,
        k_tilde_prime: w.k_hat_prime,
        k_tilde4: -w.k_hat4,
    })
}

/// The two Ising models the partial dual factorizes into.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualPair {
    /// sinh 2K = sqrt(k), disordered.
    pub k_sigma: f64,
    /// sinh 2K = 1/sqrt(k), ordered.
    pub k_tau: f64,
    pub k: f64,
}

pub fn dual_pair(s: f64) -> Result<DualPair> {
    check_strength(s)?;
    let r = sqrt_modulus(s);
    Ok(DualPair {
        k_sigma: coupling_from_sinh(r),
        k_tau: coupling_from_sinh(1.0 / r),
        k: r * r,
    })
}

/// Parities of the base site (x, y) of a correlation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SiteParity {
    pub column_odd: bool,
    pub row_odd: bool,
}

impl SiteParity {
    pub fn of(x: i64, y: i64) -> Self {
        Self {
            column_odd: x.rem_euclid(2) == 1,
            row_odd: y.rem_euclid(2) == 1,
        }
    }

    pub const ALL: [SiteParity; 4] = [
        SiteParity { column_odd: false, row_odd: false },
        SiteParity { column_odd: true, row_odd: false },
        SiteParity { column_odd: false, row_odd: true },
        SiteParity { column_odd: true, row_odd: true },
    ];
}

/// Separation class by the parities of (dx, dy).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeparationClass {
    EvenEven,
    OddOdd,
    OddEven,
    EvenOdd,
}

impl SeparationClass {
    pub fn of(dx: i64, dy: i64) -> Self {
        match (dx.rem_euclid(2) == 1, dy.rem_euclid(2) == 1) {
            (false, false) => SeparationClass::EvenEven,
            (true, true) => SeparationClass::OddOdd,
            (true, false) => SeparationClass::OddEven,
            (false, true) => SeparationClass::EvenOdd,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SeparationClass::EvenEven => "even-even",
            SeparationClass::OddOdd => "odd-odd",
            SeparationClass::OddEven => "odd-even",
            SeparationClass::EvenOdd => "even-odd",
        }
    }
}

fn parity_sign(odd: bool) -> f64 {
    if odd {
        -1.0
    } else {
        1.0
    }
}

/// Table entry fetch for the frustrated assembly.
fn pair(table: &CorrelationTable, m: i64, n: i64) -> Result<(f64, f64)> {
    Ok((table.lookup(m, n, Correlator::Primary)?, table.lookup(m, n, Correlator::Dual)?))
}

/// Checks that `table` was built for this model.
pub fn check_table(model: &FrustratedModel, table: &CorrelationTable) -> Result<()> {
    let want = model.modulus();
    let have = table.requested_k();
    if table.dual_swapped || (have - want).abs() > 1e-12 * want.max(1e-300) + 1e-15 {
        return Err(Error::Configuration(format!(
            "table modulus {have} does not match the frustrated model's {want}"
        )));
    }
    Ok(())
}

/// <s(x, y) s(x + dx, y + dy)> for a base site of the given parity.
pub fn ff_correlation(
    model: &FrustratedModel,
    table: &CorrelationTable,
    dx: i64,
    dy: i64,
    base: SiteParity,
) -> Result<f64> {
    check_table(model, table)?;
    let signed_rows = model.version == Version::Checkerboard;
    let pref = model.odd_prefactor();
    Ok(match SeparationClass::of(dx, dy) {
        SeparationClass::OddOdd => 0.0,
        SeparationClass::EvenEven => {
            let (m, n) = (dx / 2, dy / 2);
            let (c, cb) = pair(table, m, n)?;
            let sign = if signed_rows { parity_sign(n.rem_euclid(2) == 1) } else { 1.0 };
            sign * c * cb
        }
        SeparationClass::OddEven => {
            // dx = 2m - 1
            let (m, n) = ((dx + 1).div_euclid(2), dy / 2);
            let (c0, cb0) = pair(table, m - 1, n)?;
            let (c1, cb1) = pair(table, m, n)?;
            let sign = if signed_rows { parity_sign(n.rem_euclid(2) == 1) } else { 1.0 };
            sign * pref * (c0 * cb1 + c1 * cb0)
        }
        SeparationClass::EvenOdd => {
            // dy = 2n - 1
            let (m, n) = (dx / 2, (dy + 1).div_euclid(2));
            let (c0, cb0) = pair(table, m, n - 1)?;
            let (c1, cb1) = pair(table, m, n)?;
            let sign = if signed_rows {
                parity_sign(n.rem_euclid(2) == 1) * parity_sign(base.column_odd != base.row_odd)
            } else {
                parity_sign(base.column_odd)
            };
            sign * pref * (c0 * cb1 + c1 * cb0)
        }
    })
}

/// CSV of correlations by separation for one base parity: header `dx,dy,value,class`.
pub fn write_correlation_csv(
    model: &FrustratedModel,
    table: &CorrelationTable,
    radius: i64,
    base: SiteParity,
    out: &mut (impl Write + ?Sized),
) -> Result<()> {
    writeln!(out, "dx,dy,value,class")?;
    for dy in -radius..=radius {
        for dx in -radius..=radius {
            let v = ff_correlation(model, table, dx, dy, base)?;
            writeln!(out, "{dx},{dy},{v:.16e},{}", SeparationClass::of(dx, dy).label())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::build_table;

    #[test]
    fn weights_at_unit_strength() {
        let w = eight_vertex_weights(1.0).unwrap();
        assert!((w.a - 2f64.sqrt()).abs() < 1e-15 && w.a == w.b);
        assert!((w.d - 3f64.sqrt()).abs() < 1e-15 && w.c == 1.0);
        assert!(w.free_fermion_defect().abs() < 1e-14);
        assert!(((4.0 * w.k_hat).exp() * (4.0 * w.k_hat_prime).exp() - 1.0).abs() < 1e-15);
        let small = eight_vertex_weights(1e-9).unwrap();
        assert!((small.a - 1.0).abs() < 1e-15 && (small.d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn weights_come_from_couplings() {
        for &s in &[0.3, 1.0, 2.5] {
            let w = eight_vertex_weights(s).unwrap();
            let (h, hp, h4) = (w.k_hat, w.k_hat_prime, w.k_hat4);
            let c = (h - hp - h4).exp();
            assert!(((h + hp + h4).exp() / c - w.a).abs() < 1e-12);
            assert!(((-h - hp + h4).exp() / c - w.b).abs() < 1e-12);
            assert!(((-h + hp - h4).exp() / c - w.d).abs() < 1e-12);
        }
    }

    #[test]
    fn decimation_reproduces_couplings() {
        // ln 2cosh K(s1+s2+s3-s4) = const + Kh s2 s4 + Kh' s1 s3 + Kh4 s1 s2 s3 s4 + J(s1 s2 + s2 s3 - s3 s4 - s1 s4)
        for &s in &[0.4, 1.0, 3.0] {
            let k = coupling_from_sinh(s);
            let w = eight_vertex_weights(s).unwrap();
            let j = 0.125 * (2.0 * s * s).ln_1p();
            let mut offsets = Vec::new();
            for bits in 0..16 {
                let sp: Vec<f64> = (0..4).map(|i| if (bits >> i) & 1 == 0 { 1.0 } else { -1.0 }).collect();
                let (s1, s2, s3, s4) = (sp[0], sp[1], sp[2], sp[3]);
                let lhs = (2.0 * (k * (s1 + s2 + s3 - s4)).cosh()).ln();
                let rhs = w.k_hat * s2 * s4
                    + w.k_hat_prime * s1 * s3
                    + w.k_hat4 * s1 * s2 * s3 * s4
                    + j * (s1 * s2 + s2 * s3 - s3 * s4 - s1 * s4);
                offsets.push(lhs - rhs);
            }
            assert!(offsets.iter().all(|o| (o - offsets[0]).abs() < 1e-13), "{offsets:?}");
        }
    }

    #[test]
    fn decimated_spin_matches_star_sum() {
        for &s in &[0.2, 1.0, 4.0] {
            let k = coupling_from_sinh(s);
            for bits in 0..16u8 {
                let sp = [0, 1, 2, 3].map(|i| if (bits >> i) & 1 == 0 { 1i8 } else { -1 });
                let field = k * (sp[0] + sp[1] + sp[2] - sp[3]) as f64;
                let direct = field.tanh();
                assert!((decimated_spin(s, sp).unwrap() - direct).abs() < 1e-14);
            }
        }
        assert!((decimated_spin(1.0, [1, 1, 1, 1]).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(decimated_spin(1.0, [1, 0, 1, 1]).is_err());
    }

    #[test]
    fn partial_dual_and_pair() {
        let p = partial_dual(1.0).unwrap();
        assert!(((4.0 * p.k_tilde).exp() - 3f64.sqrt()).abs() < 1e-14);
        assert!(((4.0 * p.k_tilde_prime).exp() - 3f64.sqrt()).abs() < 1e-14);
        assert!(((4.0 * p.k_tilde4).exp() - 3f64.sqrt() / 2.0).abs() < 1e-14);
        let d = dual_pair(1.0).unwrap();
        assert!((d.k - (7.0 - 4.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!(((2.0 * d.k_sigma).sinh() * (2.0 * d.k_tau).sinh() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn correlation_classes() {
        let model = FrustratedModel::new(1.0, Version::Checkerboard).unwrap();
        let table = build_table(model.modulus(), 6, 256).unwrap();
        let base = SiteParity::of(0, 0);
        assert_eq!(ff_correlation(&model, &table, 3, 1, base).unwrap(), 0.0);
        let nn = ff_correlation(&model, &table, 1, 0, base).unwrap();
        let want = model.odd_prefactor() * (table.c(1, 0).unwrap() + table.cbar(1, 0).unwrap());
        assert!((nn - want).abs() < 1e-15);
        let columnar = FrustratedModel { version: Version::Columnar, ..model };
        let a = ff_correlation(&model, &table, 0, 2, base).unwrap();
        let b = ff_correlation(&columnar, &table, 0, 2, base).unwrap();
        assert_eq!(a, -b);
        let wrong = build_table(0.3, 4, 53).unwrap();
        assert!(matches!(ff_correlation(&model, &wrong, 1, 0, base), Err(Error::Configuration(_))));
    }
}
