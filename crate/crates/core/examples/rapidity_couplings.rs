// Couplings from rapidity differences, orientation flips and duality.

use ising_chi::couplings::{coupling_between, coupling_pair, kw_dual, orientation_flip, RapidityLine};
use ising_chi::elliptic::Modulus;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = Modulus::new(0.5)?;
    let strip = m.complement_quarter_period;
    for frac in [0.1, 0.5, 0.9] {
        let p = coupling_pair(frac * strip, 0.0, &m)?;
        println!(
            "u1 - u2 = {:.4}: K = {:.6}, K' = {:.6}, sinh 2K sinh 2K' = {:.15}",
            frac * strip,
            p.horizontal,
            p.vertical,
            p.product_of_sinh()
        );
    }
    let a = RapidityLine::new(0, 0.7);
    let b = RapidityLine::new(1, 0.2);
    let before = coupling_between(&a, &b, &m)?;
    let after = coupling_between(&a, &orientation_flip(b, &m), &m)?;
    println!("flip: ({:.6}, {:.6}) -> ({:.6}, {:.6})", before.horizontal, before.vertical, after.horizontal, after.vertical);
    let isotropic = coupling_pair(0.5 * strip, 0.0, &m)?.horizontal;
    println!("isotropic K = {isotropic:.9}, dual K* = {:.9}", kw_dual(isotropic)?);
    if coupling_pair(strip * 1.1, 0.0, &m).is_err() {
        println!("differences outside (0, K(k')) are rejected");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
