// Generalized Fibonacci words, sign sequences and their autocorrelation.

use ising_chi::quasiperiodic::{autocorrelation, fib_bits, sign_sequence, BitMap, FibonacciSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for j in 0..3 {
        let spec = FibonacciSpec::new(j, 0.0)?;
        let bits: String = fib_bits(&spec, 24).iter().map(|b| char::from(b'0' + b)).collect();
        println!("j = {j}: alpha = {:.9}, word {bits}", spec.alpha());
    }
    let spec = FibonacciSpec::default();
    let n = 100_000;
    let ones = fib_bits(&spec, n).iter().map(|&b| b as usize).sum::<usize>();
    println!("ones frequency {:.6} vs 1/alpha {:.6}", ones as f64 / n as f64, 1.0 / spec.alpha());

    let seq = sign_sequence(&spec, BitMap::default(), n)?;
    let kappa = autocorrelation(&seq, 8)?;
    for (d, v) in kappa.iter().enumerate() {
        println!("kappa({d}) = {v:+.6}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
