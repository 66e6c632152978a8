use std::io;
use std::process::ExitCode;

use ising_chi::cli::{run, THREADS_VAR};

fn main() -> ExitCode {
    let threads = std::env::var(THREADS_VAR).ok();
    let code = run(std::env::args_os(), threads.as_deref(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
