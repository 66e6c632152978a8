// Brute-force checks: enumeration, cylinder transfer matrices, width extrapolation.

use ising_chi::corr::build_table;
use ising_chi::oracle::cylinder::{cylinder_correlation, CylinderSpec};
use ising_chi::oracle::enumerate::{enumerate_correlation, Boundary, FiniteLatticeSpec};
use ising_chi::oracle::uniform_correlations;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let torus = Boundary { periodic_x: true, periodic_y: true };
    let lat = FiniteLatticeSpec::square(4, 4, torus, |_, _, _| 0.3)?;
    println!("4x4 torus, K = 0.3: <s0 s1> = {:.12}", enumerate_correlation(&lat, 0, 1)?);

    let spec = CylinderSpec::uniform(8, 0.3, 0.3);
    println!("W = 8 cylinder, K = 0.3: <s0 s1> = {:.12}", cylinder_correlation(&spec, (1, 0))?);

    let k = 0.5;
    let oracle = uniform_correlations(k, 3, &[8, 10, 12])?;
    let table = build_table(k, 6, 256)?;
    for (m, n) in [(1, 0), (1, 1), (2, 3)] {
        let o = oracle.spin(m, n)?;
        let d = oracle.dual(m, n)?;
        println!(
            "({m},{n}): C engine {:.10} oracle {:.10} +- {:.1e} | Cbar engine {:.10} oracle {:.10}",
            table.c(m, n)?,
            o.limit,
            o.error,
            table.cbar(m, n)?,
            d.limit
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
