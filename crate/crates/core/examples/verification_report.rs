// Oracle verification reports and their CSV form.

use ising_chi::corr::{build_table, Correlator};
use ising_chi::oracle::verify::{run_suite, verify_with_table, Suite, Target, Tolerances};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let report = run_suite(Suite::Elliptic, &tol)?;
    print!("{report}");

    // a table with one entry nudged by 1e-3 must fail against the oracle
    let table = build_table(0.5, 5, 256)?;
    let v = table.c(1, 2)?;
    let bad = table.with_entry(1, 2, Correlator::Primary, v + 1e-3);
    let report = verify_with_table(Target::Uniform { k: 0.5 }, &bad, 3, &tol)?;
    print!("{report}");
    if report.pass() {
        return Err("corrupted table passed verification".into());
    }
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    println!("{}", String::from_utf8(csv)?.lines().next().unwrap_or(""));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
