// chi(q) of the uniform and frustrated models on a zone grid, with peaks and files.

use ising_chi::chi::{chi_grid, chi_uniform, find_peaks, write_peaks_csv, ChiModel, Wavevector, DEFAULT_DENOMINATOR};
use ising_chi::corr::build_table;
use ising_chi::frustrated::{FrustratedModel, Version};
use ising_chi::output::write_atomic;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table = build_table(0.5, 30, 256)?;
    println!("chi(0, 0) = {:.10}", chi_uniform(&table, Wavevector::new(0.0, 0.0), 30)?);
    let grid = chi_grid(&ChiModel::Uniform(&table), 64, 64, 30)?;
    println!("uniform: mean {:.12}, min {:.6}, max {:.6}, tail {:.2e}", grid.mean(), grid.min(), grid.max(), grid.tail_bound);
    for p in find_peaks(&grid, DEFAULT_DENOMINATOR) {
        println!("  peak at ({:+.4}, {:+.4}) = {:.6}", p.q.qx, p.q.qy, p.value);
    }

    let model = FrustratedModel::new(1.0, Version::Checkerboard)?;
    let ft = build_table(model.modulus(), 16, 256)?;
    let fgrid = chi_grid(&ChiModel::Frustrated(&model, &ft), 64, 64, 30)?;
    let peaks = find_peaks(&fgrid, DEFAULT_DENOMINATOR);
    println!("frustrated: {} peaks, all commensurate: {}", peaks.len(), peaks.iter().all(|p| p.commensurate));

    let dir = tempfile::tempdir()?;
    write_atomic(&dir.path().join("chi.csv"), |w| fgrid.write_csv(w))?;
    write_atomic(&dir.path().join("chi.pgm"), |w| fgrid.write_pgm(w))?;
    write_atomic(&dir.path().join("peaks.csv"), |w| write_peaks_csv(&peaks, w))?;
    let pgm = std::fs::read(dir.path().join("chi.pgm"))?;
    println!("PGM: {} bytes", pgm.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
