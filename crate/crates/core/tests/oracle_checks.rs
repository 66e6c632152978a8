//! Cross-checks between the independent oracles, and of the engine against them.

use ising_chi::corr::{build_table, Correlator};
use ising_chi::couplings::coupling_from_sinh;
use ising_chi::frustrated::{ff_correlation, FrustratedModel, SiteParity, Version};
use ising_chi::oracle::cylinder::{cylinder_correlation, torus_correlation, CylinderSpec};
use ising_chi::oracle::enumerate::{enumerate_correlation, Boundary, FiniteLatticeSpec};
use ising_chi::oracle::frustrated_correlations;
use ising_chi::oracle::verify::{verify_with_table, Target, Tolerances};

fn uniform_coupling(k: f64) -> f64 {
    coupling_from_sinh(k.sqrt())
}

#[test]
fn two_site_correlation_is_tanh() {
    for &k in &[0.05, 0.4, 1.3] {
        let lat = FiniteLatticeSpec::square(2, 1, Boundary::default(), |_, _, _| k).unwrap();
        let c = enumerate_correlation(&lat, 0, 1).unwrap();
        assert!((c - k.tanh()).abs() < 1e-15, "K={k}: {c}");
    }
}

#[test]
fn weak_coupling_limit() {
    let k = 1e-4;
    let spec = CylinderSpec::uniform(8, k, k);
    let nn = cylinder_correlation(&spec, (1, 0)).unwrap();
    assert!((nn - k.tanh()).abs() < 1e-10, "{nn}");
    let far = cylinder_correlation(&spec, (2, 1)).unwrap();
    assert!(far.abs() < 1e-10, "{far}");
}

#[test]
fn enumeration_matches_traces() {
    let t = 0.37;
    let spec = CylinderSpec::uniform(4, t, t);
    let lat = FiniteLatticeSpec::square(4, 4, Boundary { periodic_x: true, periodic_y: true }, |_, _, _| t).unwrap();
    for (bx, by) in [(1, 0), (2, 0), (1, 1), (2, 2), (0, 3)] {
        let traced = torus_correlation(&spec, 4, (0, 0), (bx, by)).unwrap();
        let counted = enumerate_correlation(&lat, 0, by * 4 + bx).unwrap();
        assert!((traced - counted).abs() < 1e-10, "({bx},{by}): {traced} vs {counted}");
    }

    // mixed signs: columnar frustration on a 4x4 torus
    let sign = |x: usize, horizontal: bool| if horizontal || x.is_multiple_of(2) { 1.0 } else { -1.0 };
    let frustrated = CylinderSpec::patterned(4, 1, |x, _| (t, t * sign(x, false)));
    let lat = FiniteLatticeSpec::square(4, 4, Boundary { periodic_x: true, periodic_y: true }, |x, _, h| t * sign(x, h))
        .unwrap();
    for (bx, by) in [(1, 0), (1, 1), (3, 2)] {
        let traced = torus_correlation(&frustrated, 4, (0, 0), (bx, by)).unwrap();
        let counted = enumerate_correlation(&lat, 0, by * 4 + bx).unwrap();
        assert!((traced - counted).abs() < 1e-10, "frustrated ({bx},{by}): {traced} vs {counted}");
    }
}

#[test]
fn long_torus_approaches_cylinder() {
    let errors = |t: f64| -> Vec<f64> {
        let spec = CylinderSpec::uniform(4, t, t);
        let cylinder = cylinder_correlation(&spec, (1, 1)).unwrap();
        [4, 8, 12]
            .iter()
            .map(|&length| (torus_correlation(&spec, length, (1, 0), (2, 1)).unwrap() - cylinder).abs())
            .collect()
    };
    let hot = errors(0.1);
    assert!(hot[2] < 1e-8, "{hot:?}");
    let near = errors(uniform_coupling(0.5));
    assert!(near[0] > near[1] && near[1] > near[2], "{near:?}");
}

#[test]
fn griffiths_inequalities_hold() {
    let couplings = [0.1, 0.7, 0.35, 1.2, 0.02, 0.5];
    let lattice = |boost: f64| {
        FiniteLatticeSpec::square(3, 4, Boundary::default(), move |x, y, h| {
            let i = (x + 2 * y + usize::from(h)) % couplings.len();
            couplings[i] + if i == 2 { boost } else { 0.0 }
        })
        .unwrap()
    };
    let (base, stronger) = (lattice(0.0), lattice(0.3));
    for b in 0..base.sites() {
        let c = enumerate_correlation(&base, 0, b).unwrap();
        assert!((0.0..=1.0).contains(&c), "site {b}: {c}");
        // raising a ferromagnetic coupling never lowers a correlation
        let up = enumerate_correlation(&stronger, 0, b).unwrap();
        assert!(up >= c - 1e-15, "site {b}: {up} < {c}");
    }
}

#[test]
fn frustrated_engine_matches_oracle_away_from_unit_strength() {
    for &s in &[0.5, 2.0] {
        for version in [Version::Checkerboard, Version::Columnar] {
            let model = FrustratedModel::new(s, version).unwrap();
            let table = build_table(model.modulus(), 6, 256).unwrap();
            let oracle = frustrated_correlations(&model, 3, &[8, 10, 12, 14]).unwrap();
            let mut worst = 0.0f64;
            for base in SiteParity::ALL {
                for dy in -3..=3 {
                    for dx in -3..=3 {
                        let e = ff_correlation(&model, &table, dx, dy, base).unwrap();
                        let o = oracle.correlation(dx, dy, base).unwrap().limit;
                        worst = worst.max((e - o).abs());
                    }
                }
            }
            assert!(worst < 1e-6, "S={s} {version:?}: {worst:.1e}");
        }
    }
}

#[test]
fn corrupted_entry_is_located() {
    let clean = build_table(0.5, 6, 256).unwrap();
    let tol = Tolerances::default();
    let report = verify_with_table(Target::Uniform { k: 0.5 }, &clean, 3, &tol).unwrap();
    assert!(report.pass(), "{report}");

    let value = clean.c(2, 3).unwrap();
    let corrupted = clean.with_entry(2, 3, Correlator::Primary, value + 1e-3);
    let report = verify_with_table(Target::Uniform { k: 0.5 }, &corrupted, 3, &tol).unwrap();
    assert!(!report.pass());
    let hit = report
        .checks
        .iter()
        .find(|c| c.identity == "engine vs oracle C")
        .unwrap();
    assert!(!hit.pass && hit.residual >= 1e-4, "{hit:?}");
    assert!(hit.location == "(2,3)" || hit.location == "(3,2)", "{hit:?}");
}
