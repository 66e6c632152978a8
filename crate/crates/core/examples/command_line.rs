// Driving the command-line front end in-process.

use ising_chi::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "# shared settings\nradius = 10\ngrid = 32x32\n")?;
    let out = dir.path().join("chi.csv");
    let peaks = dir.path().join("peaks.csv");
    let args = [
        "ising-chi",
        "--config",
        config.to_str().ok_or("path")?,
        "chi",
        "uniform",
        "--k",
        "0.4",
        "--out",
        out.to_str().ok_or("path")?,
        "--peaks",
        peaks.to_str().ok_or("path")?,
    ];
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = run(args, None, &mut stdout, &mut stderr);
    print!("{}", String::from_utf8(stdout)?);
    if code != 0 {
        return Err(format!("chi run exited {code}: {}", String::from_utf8(stderr)?).into());
    }
    println!("peaks file:\n{}", std::fs::read_to_string(&peaks)?);

    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = run(["ising-chi", "fib", "--j", "0", "--count", "5"], None, &mut stdout, &mut stderr);
    println!("fib exit {code}: {}", String::from_utf8(stdout)?.replace('\n', " "));

    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = run(["ising-chi", "chi", "uniform", "--k", "1.5", "--radius", "4", "--grid", "8x8", "--out", "x.csv"], None, &mut stdout, &mut stderr);
    print!("bad k exit {code}: {}", String::from_utf8(stderr)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
