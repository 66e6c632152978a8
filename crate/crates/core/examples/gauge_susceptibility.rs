// Mixed-sign rows from a Fibonacci word: incommensurate structure in chi(q).

use ising_chi::chi::{chi_grid, find_peaks, ChiModel, DEFAULT_DENOMINATOR};
use ising_chi::corr::build_table;
use ising_chi::quasiperiodic::{autocorrelation, sign_sequence, BitMap, FibonacciSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let radius = 60;
    let seq = sign_sequence(&FibonacciSpec::default(), BitMap::default(), 100_000)?;
    let kappa = autocorrelation(&seq, radius)?;
    for k in [0.5, 0.9] {
        let table = build_table(k, radius, 256)?;
        let grid = chi_grid(&ChiModel::ColumnGauge(&table, &kappa), 128, 128, radius)?;
        let peaks = find_peaks(&grid, DEFAULT_DENOMINATOR);
        let incommensurate = peaks.iter().filter(|p| !p.commensurate).count();
        println!("k = {k}: {} peaks, {incommensurate} incommensurate, max chi {:.4}", peaks.len(), grid.max());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
