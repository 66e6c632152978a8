// Correlation tables at double and extended precision.

use ising_chi::corr::{build_table, dual_magnetization, onsager_nn};
use ising_chi::elliptic::Modulus;
use ising_chi::output::write_atomic;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = 0.5;
    let table = build_table(k, 30, 256)?;
    println!("k = {k}, radius {}, {} bits", table.radius, table.precision_bits);
    println!("worst identity residual {:.3e}", table.residual_report.worst());
    for (m, n) in [(0, 1), (1, 1), (2, 3), (5, 5), (10, 20)] {
        println!("C({m},{n}) = {:.15}   Cbar({m},{n}) = {:.15}", table.c(m, n)?, table.cbar(m, n)?);
    }
    let modulus = Modulus::new(k)?;
    println!("nearest neighbour {:.15} (closed form {:.15})", table.c(1, 0)?, onsager_nn(&modulus));
    println!("Cbar(30,30) = {:.12}, long-range limit {:.12}", table.cbar(30, 30)?, dual_magnetization(&modulus));

    let quick = build_table(k, 12, 53)?;
    println!("double precision, R = 12: residual {:.3e}", quick.residual_report.worst());

    let swapped = build_table(2.0, 6, 256)?;
    println!("k = 2 served from k = 0.5 with roles exchanged: C(1,0) = {:.12}", swapped.c(1, 0)?);

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("table.csv");
    write_atomic(&path, |w| table.write_csv(w))?;
    let text = std::fs::read_to_string(&path)?;
    println!("{} lines written, header {:?}", text.lines().count(), text.lines().next().unwrap_or(""));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
