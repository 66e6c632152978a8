//! Identity residual reports and the named verification suites.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;

use crate::chi::{chi_column_gauge, chi_grid, chi_uniform, ChiModel, Wavevector};
use crate::corr::{build_table, onsager_nn, CorrelationTable, DEFAULT_BITS, DOUBLE_BITS};
use crate::couplings::{coupling_between, coupling_pair, orientation_flip, RapidityLine};
use crate::elliptic::{complete_elliptic_k, jacobi_elliptic, Modulus};
use crate::error::{Error, Result};
use crate::frustrated::{eight_vertex_weights, ff_correlation, FrustratedModel, SiteParity, Version};

use super::cylinder::{cylinder_correlation, CylinderSpec, Seam};
use super::quadrature::integrate;
use super::{extrapolate, frustrated_correlations, uniform_correlations, OracleTable, DEFAULT_WIDTHS};

/// Worst residual of one identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub identity: String,
    pub residual: f64,
    pub location: String,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Quantities the oracle could not produce; any entry fails the report.
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.failures.extend(other.failures);
    }

    /// Records the worst of a set of (location, residual) pairs; NaN counts as a failure.
    pub fn record(&mut self, identity: &str, tolerance: f64, residuals: impl IntoIterator<Item = (String, f64)>) {
        let mut worst = (String::from("-"), 0.0f64);
        for (loc, r) in residuals {
            let r = r.abs();
            if r.is_nan() || r > worst.1 {
                worst = (loc, if r.is_nan() { f64::INFINITY } else { r });
            }
        }
        self.checks.push(Check {
            identity: identity.to_string(),
            residual: worst.1,
            location: worst.0,
            tolerance,
            pass: worst.1 <= tolerance,
        });
    }

    /// CSV with header `identity,location,residual,tolerance,pass`.
    pub fn write_csv(&self, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        writeln!(out, "identity,location,residual,tolerance,pass")?;
        for c in &self.checks {
            writeln!(
                out,
                "{},\"{}\",{:.16e},{:.16e},{}",
                c.identity, c.location, c.residual, c.tolerance, c.pass
            )?;
        }
        for f in &self.failures {
            writeln!(out, "oracle,\"{}\",inf,0,false", f.replace('"', "'"))?;
        }
        Ok(())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<28} worst {:.3e} at {} (tol {:.1e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.identity,
                c.residual,
                c.location,
                c.tolerance
            )?;
        }
        for e in &self.failures {
            writeln!(f, "FAIL oracle: {e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Oracle comparisons, limited by width extrapolation.
    pub oracle: f64,
    /// Identities that hold to rounding error.
    pub exact: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { oracle: 1e-6, exact: 1e-12 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    Uniform { k: f64 },
    Frustrated { strength: f64, version: Version },
}

fn loc(m: i64, n: i64) -> String {
    format!("({m},{n})")
}

/// Recurrence residuals evaluated on oracle data alone.
fn oracle_recurrences(o: &OracleTable, radius: i64, tol: f64, report: &mut VerificationReport) {
    let k = o.k;
    let c = |m: i64, n: i64| o.spin(m, n).map(|e| e.limit).unwrap_or(f64::NAN);
    let cb = |m: i64, n: i64| o.dual(m, n).map(|e| e.limit).unwrap_or(f64::NAN);
    let points: Vec<(i64, i64)> = (0..=radius).flat_map(|m| (0..=radius).map(move |n| (m, n))).collect();
    let row = |m: i64, n: i64| {
        (cb(m, n + 1) * cb(m, n - 1) - cb(m, n).powi(2)) + k * (c(m + 1, n) * c(m - 1, n) - c(m, n).powi(2))
    };
    let col = |m: i64, n: i64| {
        (cb(m + 1, n) * cb(m - 1, n) - cb(m, n).powi(2)) + k * (c(m, n + 1) * c(m, n - 1) - c(m, n).powi(2))
    };
    let det = |m: i64, n: i64| {
        (cb(m, n) * cb(m + 1, n + 1) - cb(m + 1, n) * cb(m, n + 1))
            - k * (c(m, n) * c(m + 1, n + 1) - c(m + 1, n) * c(m, n + 1))
    };
    let lin = |m: i64, n: i64| {
        k.sqrt()
            * (c(m + 1, n) * cb(m - 1, n)
                + c(m - 1, n) * cb(m + 1, n)
                + c(m, n + 1) * cb(m, n - 1)
                + c(m, n - 1) * cb(m, n + 1))
            - 2.0 * (k + 1.0) * c(m, n) * cb(m, n)
    };
    // the row, column and linear relations do not hold at the origin
    let off_origin: Vec<(i64, i64)> = points.iter().copied().filter(|&p| p != (0, 0)).collect();
    report.record("oracle row recurrence", tol, off_origin.iter().map(|&(m, n)| (loc(m, n), row(m, n))));
    report.record("oracle column recurrence", tol, off_origin.iter().map(|&(m, n)| (loc(m, n), col(m, n))));
    let inner = points.iter().filter(|p| p.0 < radius && p.1 < radius);
    report.record("oracle determinant", tol, inner.map(|&(m, n)| (loc(m, n), det(m, n))));
    report.record("oracle linear", tol, off_origin.iter().map(|&(m, n)| (loc(m, n), lin(m, n))));
}

fn uniform_report(table: &CorrelationTable, radius: usize, tol: &Tolerances) -> VerificationReport {
    let mut report = VerificationReport::default();
    let k = table.requested_k();
    let oracle = match uniform_correlations(k, radius + 1, &DEFAULT_WIDTHS) {
        Ok(o) => o,
        Err(e) => {
            report.failures.push(e.to_string());
            return report;
        }
    };
    let r = radius as i64;
    oracle_recurrences(&oracle, r, tol.oracle, &mut report);
    let points: Vec<(i64, i64)> = (0..=r).flat_map(|m| (0..=r).map(move |n| (m, n))).collect();
    let diff = |engine: Result<f64>, o: Result<super::Extrapolated>| match (engine, o) {
        (Ok(a), Ok(b)) => a - b.limit,
        _ => f64::NAN,
    };
    report.record(
        "engine vs oracle C",
        tol.oracle,
        points.iter().map(|&(m, n)| (loc(m, n), diff(table.c(m, n), oracle.spin(m, n)))),
    );
    report.record(
        "engine vs oracle Cbar",
        tol.oracle,
        points.iter().map(|&(m, n)| (loc(m, n), diff(table.cbar(m, n), oracle.dual(m, n)))),
    );
    report
}

fn frustrated_report(model: &FrustratedModel, table: &CorrelationTable, radius: usize, tol: &Tolerances) -> VerificationReport {
    let mut report = VerificationReport::default();
    let oracle = match frustrated_correlations(model, radius, &[8, 10, 12, 14]) {
        Ok(o) => o,
        Err(e) => {
            report.failures.push(e.to_string());
            return report;
        }
    };
    let r = radius as i64;
    let mut residuals = Vec::new();
    for base in SiteParity::ALL {
        for dy in -r..=r {
            for dx in -r..=r {
                let engine = ff_correlation(model, table, dx, dy, base);
                let o = oracle.correlation(dx, dy, base);
                let res = match (engine, o) {
                    (Ok(a), Ok(b)) => a - b.limit,
                    _ => f64::NAN,
                };
                let parity = format!("x{}y{}", u8::from(base.column_odd), u8::from(base.row_odd));
                residuals.push((format!("({dx},{dy}) base {parity}"), res));
            }
        }
    }
    report.record("frustrated assembly", tol.oracle, residuals);
    report
}

/// Oracle residuals of the recurrences and of the engine's correlations.
pub fn verify_identities(target: Target, radius: usize, tol: &Tolerances) -> Result<VerificationReport> {
    let table_radius = match target {
        Target::Uniform { .. } => radius + 2,
        Target::Frustrated { .. } => radius / 2 + 2,
    };
    let table = match target {
        Target::Uniform { k } => build_table(k, table_radius, DEFAULT_BITS)?,
        Target::Frustrated { strength, version } => {
            build_table(FrustratedModel::new(strength, version)?.modulus(), table_radius, DEFAULT_BITS)?
        }
    };
    verify_with_table(target, &table, radius, tol)
}

/// As [`verify_identities`], comparing against a caller-supplied table.
pub fn verify_with_table(
    target: Target,
    table: &CorrelationTable,
    radius: usize,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    match target {
        Target::Uniform { k } => {
            if (table.requested_k() - k).abs() > 1e-12 * k {
                return Err(Error::Configuration(format!(
                    "table is for k = {}, target is k = {k}",
                    table.requested_k()
                )));
            }
            Ok(uniform_report(table, radius, tol))
        }
        Target::Frustrated { strength, version } => {
            let model = FrustratedModel::new(strength, version)?;
            Ok(frustrated_report(&model, table, radius, tol))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Elliptic,
    Couplings,
    Recurrence,
    Frustrated,
    Chi,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "elliptic" => Suite::Elliptic,
            "couplings" => Suite::Couplings,
            "recurrence" => Suite::Recurrence,
            "frustrated" => Suite::Frustrated,
            "chi" => Suite::Chi,
            "all" => Suite::All,
            _ => {
                return Err(Error::Configuration(format!(
                    "unknown suite {s:?}; expected elliptic, couplings, recurrence, frustrated, chi or all"
                )))
            }
        })
    }
}

/// Evenly spread points in (0, 1), avoiding the ends.
fn spread(count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| (i as f64 + 0.5) / count as f64)
}

fn elliptic_suite(tol: &Tolerances) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    r.record("K(0) = pi/2", 1e-15, [("k=0".to_string(), complete_elliptic_k(0.0)? - PI / 2.0)]);
    let mut quad = Vec::new();
    for k in spread(20).map(|t| 0.98 * t) {
        let direct = integrate(|t: f64| 1.0 / (1.0 - (k * t.sin()).powi(2)).sqrt(), 0.0, PI / 2.0, 1e-15);
        quad.push((format!("k={k:.4}"), complete_elliptic_k(k)? - direct));
    }
    r.record("K(k) vs quadrature", tol.exact, quad);
    let mut pyth = Vec::new();
    let mut modular = Vec::new();
    for (i, t) in spread(1000).enumerate() {
        let k = 0.03 + 0.96 * ((i * 37) % 1000) as f64 / 1000.0;
        let u = (t - 0.5) * 8.0;
        let j = jacobi_elliptic(u, k)?;
        pyth.push((format!("u={u:.4},k={k:.3}"), j.sn * j.sn + j.cn * j.cn - 1.0));
        modular.push((format!("u={u:.4},k={k:.3}"), j.dn * j.dn + k * k * j.sn * j.sn - 1.0));
    }
    r.record("sn^2 + cn^2 = 1", tol.exact, pyth);
    r.record("dn^2 + k^2 sn^2 = 1", tol.exact, modular);
    Ok(r)
}

fn couplings_suite(tol: &Tolerances) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let mut product = Vec::new();
    let mut flip = Vec::new();
    for (i, t) in spread(1000).enumerate() {
        let k = 0.02 + 0.96 * ((i * 613) % 1000) as f64 / 1000.0;
        let m = Modulus::new(k)?;
        let u2 = ((i * 271) % 1000) as f64 / 1000.0 - 0.5;
        let u1 = u2 + t * m.complement_quarter_period;
        let p = coupling_pair(u1, u2, &m)?;
        let at = format!("u1={u1:.4},u2={u2:.4},k={k:.3}");
        product.push((at.clone(), p.product_of_sinh() - k));
        let a = RapidityLine::new(0, u1);
        let b = orientation_flip(RapidityLine::new(1, u2), &m);
        let q = coupling_between(&a, &b, &m)?;
        flip.push((at, (p.horizontal - q.vertical).abs().max((p.vertical - q.horizontal).abs())));
    }
    r.record("sinh 2K sinh 2K' = k", tol.exact, product);
    r.record("orientation flip swaps pair", tol.exact, flip);
    Ok(r)
}

fn recurrence_suite(tol: &Tolerances) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let m = Modulus::new(0.5)?;
    let coupling = crate::couplings::coupling_from_sinh(0.5f64.sqrt());
    let series = [8usize, 10, 12, 14]
        .iter()
        .map(|&w| {
            let spec = CylinderSpec::uniform(w, coupling, coupling);
            let p = cylinder_correlation(&spec.with_seam(Seam::Periodic), (1, 0))?;
            let a = cylinder_correlation(&spec.with_seam(Seam::Antiperiodic), (1, 0))?;
            Ok((w, 0.5 * (p + a)))
        })
        .collect::<Result<Vec<_>>>()?;
    match extrapolate(&series) {
        Ok(e) => r.record("nearest neighbour vs cylinders", tol.oracle, [("k=0.5".into(), onsager_nn(&m) - e.limit)]),
        Err(e) => r.failures.push(e.to_string()),
    }
    let big = build_table(0.5, 40, DEFAULT_BITS)?;
    let seed = 0.5f64.sqrt() * big.c(1, 0)? + big.cbar(0, 1)? - 1.5f64.sqrt();
    r.record("seed relation", tol.exact, [("k=0.5".into(), seed)]);
    r.record("determinant residual 256-bit R=40", 1e-20, [(rc(big.residual_report.determinant_at), big.residual_report.determinant)]);
    r.record("linear residual 256-bit R=40", 1e-20, [(rc(big.residual_report.linear_at), big.residual_report.linear)]);
    let small = build_table(0.5, 12, DOUBLE_BITS)?;
    r.record("residuals double R=12", tol.exact, [(rc(small.residual_report.determinant_at), small.residual_report.worst())]);
    let m_inf = (1.0f64 - 0.25).powf(0.25);
    r.record("dual long-range order", 1e-3, [("(30,30)".into(), big.cbar(30, 30)? - m_inf)]);
    r.merge(verify_identities(Target::Uniform { k: 0.5 }, 4, tol)?);
    Ok(r)
}

fn rc(p: (usize, usize)) -> String {
    format!("({},{})", p.0, p.1)
}

fn frustrated_suite(tol: &Tolerances) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let defects = spread(1000)
        .map(|t| {
            let s = (8.0 * t - 4.0).exp();
            let w = eight_vertex_weights(s)?;
            Ok((format!("S={s:.4e}"), w.free_fermion_defect() / (w.a * w.a)))
        })
        .collect::<Result<Vec<_>>>()?;
    r.record("free-fermion condition", tol.exact, defects);
    for version in [Version::Columnar, Version::Checkerboard] {
        let mut sub = verify_identities(Target::Frustrated { strength: 1.0, version }, 3, tol)?;
        for c in &mut sub.checks {
            c.identity = format!("{} ({})", c.identity, if version == Version::Columnar { "b" } else { "a" });
        }
        r.merge(sub);
    }
    Ok(r)
}

fn chi_suite(tol: &Tolerances) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let table = build_table(0.5, 30, DEFAULT_BITS)?;
    let grid = chi_grid(&ChiModel::Uniform(&table), 64, 64, 30)?;
    r.record("sum rule", 1e-3, [("64x64 R=30".into(), grid.mean() - 1.0)]);
    r.record("non-negativity", grid.tail_bound + 1e-10, [("grid".into(), grid.min().min(0.0))]);
    let mut even = Vec::new();
    let mut periodic = Vec::new();
    let mut shift = Vec::new();
    let alt: Vec<f64> = (0..=30).map(|d| if d % 2 == 0 { 1.0 } else { -1.0 }).collect();
    for (i, t) in spread(50).enumerate() {
        let qx = (2.0 * t - 1.0) * PI;
        let qy = ((i * 17 % 50) as f64 / 50.0 * 2.0 - 1.0) * PI;
        let at = format!("({qx:.4},{qy:.4})");
        let v = chi_uniform(&table, Wavevector::new(qx, qy), 30)?;
        even.push((at.clone(), v - chi_uniform(&table, Wavevector::new(-qx, -qy), 30)?));
        periodic.push((at.clone(), v - chi_uniform(&table, Wavevector::new(qx + 2.0 * PI, qy - 2.0 * PI), 30)?));
        let g = chi_column_gauge(&table, &alt, Wavevector::new(qx, qy), 30)?;
        shift.push((at, g - chi_uniform(&table, Wavevector::new(qx, qy + PI), 30)?));
    }
    r.record("evenness", tol.exact, even);
    r.record("periodicity", tol.exact, periodic);
    r.record("alternating gauge shift", tol.exact, shift);
    Ok(r)
}

/// Runs a named suite.
pub fn run_suite(suite: Suite, tol: &Tolerances) -> Result<VerificationReport> {
    match suite {
        Suite::Elliptic => elliptic_suite(tol),
        Suite::Couplings => couplings_suite(tol),
        Suite::Recurrence => recurrence_suite(tol),
        Suite::Frustrated => frustrated_suite(tol),
        Suite::Chi => chi_suite(tol),
        Suite::All => {
            let mut all = VerificationReport::default();
            for s in [Suite::Elliptic, Suite::Couplings, Suite::Recurrence, Suite::Frustrated, Suite::Chi] {
                all.merge(run_suite(s, tol)?);
            }
            Ok(all)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_picks_worst_and_flags_nan() {
        let mut r = VerificationReport::default();
        r.record("x", 1e-3, [("a".into(), 1e-4), ("b".into(), -2e-4)]);
        assert!(r.pass());
        assert_eq!(r.checks[0].location, "b");
        r.record("y", 1e-3, [("c".into(), f64::NAN)]);
        assert!(!r.pass());
        let mut csv = Vec::new();
        r.write_csv(&mut csv).unwrap();
        assert!(String::from_utf8(csv).unwrap().starts_with("identity,location,residual,tolerance,pass\n"));
    }

    #[test]
    fn cheap_suites_pass() {
        let tol = Tolerances::default();
        for s in [Suite::Elliptic, Suite::Couplings] {
            let r = run_suite(s, &tol).unwrap();
            assert!(r.pass(), "{r}");
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
