// Complete elliptic integrals and Jacobi functions.

use ising_chi::elliptic::{complete_elliptic_e, complete_elliptic_k, jacobi_elliptic, Modulus};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for k in [0.0, 0.5, 0.9, 0.999] {
        println!("k = {k:<6} K = {:.15}  E = {:.15}", complete_elliptic_k(k)?, complete_elliptic_e(k)?);
    }
    let m = Modulus::new(0.6)?;
    println!("K(0.6) = {:.12}, K(k') = {:.12}", m.quarter_period, m.complement_quarter_period);
    let j = jacobi_elliptic(0.5 * m.quarter_period, m.k)?;
    println!("sn = {:.12}, cn = {:.12}, dn = {:.12}, sc = {:.12}", j.sn, j.cn, j.dn, j.sc()?);
    // at u = K/2, sn^2 = 1 / (1 + k')
    let expect = 1.0 / (1.0 + m.complement);
    if (j.sn * j.sn - expect).abs() > 1e-12 {
        return Err("half-period value of sn is off".into());
    }
    match jacobi_elliptic(m.quarter_period, m.k)?.sc() {
        Err(e) => println!("at u = K: {e}"),
        Ok(v) => println!("sc(K) = {v:e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
