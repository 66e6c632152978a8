// Fully frustrated lattice: decimation weights and pair correlations.

use ising_chi::corr::build_table;
use ising_chi::frustrated::{
    decimated_spin, dual_pair, eight_vertex_weights, ff_correlation, partial_dual, FrustratedModel, SiteParity,
    Version,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = 1.0;
    let w = eight_vertex_weights(s)?;
    println!("weights a = {:.6}, b = {:.6}, c = {:.6}, d = {:.6}; a^2+b^2-c^2-d^2 = {:e}", w.a, w.b, w.c, w.d, w.free_fermion_defect());
    println!("<s0 | + + + +> = {:.12}", decimated_spin(s, [1, 1, 1, 1])?);
    let pd = partial_dual(s)?;
    println!("partial dual couplings {:.6} {:.6} {:.6}", pd.k_tilde, pd.k_tilde_prime, pd.k_tilde4);
    let pair = dual_pair(s)?;
    println!("decoupled Ising pair: K = {:.6}, K* = {:.6}, k = {:.9}", pair.k_sigma, pair.k_tau, pair.k);

    let model = FrustratedModel::new(s, Version::Checkerboard)?;
    let table = build_table(model.modulus(), 8, 256)?;
    let columnar = FrustratedModel::new(s, Version::Columnar)?;
    println!("  dx dy   checkerboard      columnar   (base site (0,0))");
    for (dx, dy) in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (3, 2), (2, 3)] {
        let base = SiteParity::of(0, 0);
        println!(
            "{dx:>4} {dy:>2} {:>14.10} {:>14.10}",
            ff_correlation(&model, &table, dx, dy, base)?,
            ff_correlation(&columnar, &table, dx, dy, base)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
