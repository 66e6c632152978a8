//! Command-line front end.
//!
//! Flags may be preset in a `key = value` file given with `--config`; keys
//! are the long flag names without dashes. Flags on the command line win.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chi::{chi_grid, find_peaks, write_peaks_csv, ChiModel, DEFAULT_DENOMINATOR};
use crate::corr::{build_table, DEFAULT_BITS};
use crate::error::{Error, Result};
use crate::frustrated::{FrustratedModel, Version};
use crate::oracle::verify::{run_suite, Suite, Tolerances};
use crate::output::write_atomic;
use crate::quasiperiodic::{autocorrelation, fib_bits, sign_sequence, BitMap, FibonacciSpec};

/// Environment variable capping the worker thread count.
pub const THREADS_VAR: &str = "ISING_CHI_THREADS";

/// Sign window used for the gauge autocorrelation unless configured.
pub const DEFAULT_SIGN_WINDOW: usize = 100_000;

#[derive(Parser, Debug)]
#[command(name = "ising-chi", version, about = "Exact Ising correlations and chi(q) grids")]
pub struct Cli {
    /// File of `key = value` defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Export a correlation table as CSV.
    Corr(CorrArgs),
    /// Sample chi(q) on a Brillouin-zone grid.
    Chi {
        #[command(subcommand)]
        model: ChiCommand,
    },
    /// Print a generalized Fibonacci sequence.
    Fib(FibArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Default)]
pub struct CorrArgs {
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub precision: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accept k > 1 and serve it from the dual table at 1/k.
    #[arg(long)]
    pub dual: bool,
}

#[derive(Args, Debug, Default, Clone)]
pub struct GridArgs {
    #[arg(long)]
    pub radius: Option<usize>,
    /// Grid size as NXxNY.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub pgm: Option<PathBuf>,
    #[arg(long)]
    pub peaks: Option<PathBuf>,
    #[arg(long)]
    pub precision: Option<usize>,
    /// Peaks within one cell of a multiple of 2 pi / denominator count as commensurate.
    #[arg(long)]
    pub denominator: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum ChiCommand {
    Uniform {
        #[arg(long)]
        k: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    Frustrated {
        #[arg(long = "S")]
        s: Option<f64>,
        #[arg(long, value_enum)]
        version: Option<VersionArg>,
        #[command(flatten)]
        grid: GridArgs,
    },
    Gauge {
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        gamma: Option<f64>,
        /// Number of rows used to estimate the sign autocorrelation.
        #[arg(long)]
        window: Option<usize>,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VersionArg {
    A,
    B,
}

impl From<VersionArg> for Version {
    fn from(v: VersionArg) -> Self {
        match v {
            VersionArg::A => Version::Checkerboard,
            VersionArg::B => Version::Columnar,
        }
    }
}

#[derive(Args, Debug, Default)]
pub struct FibArgs {
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Print signs (+1 / -1) instead of bits.
    #[arg(long)]
    pub signs: bool,
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    /// elliptic, couplings, recurrence, frustrated, chi or all.
    pub suite: String,
    /// Tolerance for oracle comparisons.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Also write the report as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Parsed `key = value` pairs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    values: HashMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = HashMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Configuration(format!("config line {}: expected key = value", no + 1)));
            };
            values.insert(key.trim().trim_start_matches("--").to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Configuration(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Fills `slot` from key `key` when the flag was not given.
    fn fill<T: FromStr>(&self, slot: &mut Option<T>, key: &str) -> Result<()> {
        if slot.is_none() {
            if let Some(v) = self.values.get(key) {
                *slot = Some(v.parse().map_err(|_| {
                    Error::Configuration(format!("config key {key}: cannot parse {v:?}"))
                })?);
            }
        }
        Ok(())
    }

    fn flag(&self, slot: &mut bool, key: &str) -> Result<()> {
        if !*slot {
            let mut v: Option<bool> = None;
            self.fill(&mut v, key)?;
            *slot = v.unwrap_or(false);
        }
        Ok(())
    }
}

impl FromStr for VersionArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(VersionArg::A),
            "b" => Ok(VersionArg::B),
            _ => Err(Error::Configuration(format!("version must be a or b, got {s:?}"))),
        }
    }
}

fn required<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Configuration(format!("missing --{name}")))
}

fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Configuration(format!("grid must look like 64x64, got {s:?}"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::Domain(format!(
            "k = {k} must lie in (0, 1); k > 1 is only available through `corr --dual`"
        )));
    }
    Ok(())
}

fn fill_grid(cfg: &ConfigFile, g: &mut GridArgs) -> Result<()> {
    cfg.fill(&mut g.radius, "radius")?;
    cfg.fill(&mut g.grid, "grid")?;
    cfg.fill(&mut g.out, "out")?;
    cfg.fill(&mut g.pgm, "pgm")?;
    cfg.fill(&mut g.peaks, "peaks")?;
    cfg.fill(&mut g.precision, "precision")?;
    cfg.fill(&mut g.denominator, "denominator")?;
    Ok(())
}

fn run_corr(mut a: CorrArgs, cfg: &ConfigFile, out: &mut dyn Write) -> Result<()> {
    cfg.fill(&mut a.k, "k")?;
    cfg.fill(&mut a.radius, "radius")?;
    cfg.fill(&mut a.precision, "precision")?;
    cfg.fill(&mut a.out, "out")?;
    cfg.flag(&mut a.dual, "dual")?;
    let k = required(a.k, "k")?;
    if k > 1.0 && !a.dual {
        return Err(Error::Domain(format!("k = {k} exceeds 1; pass --dual to use the dual table at 1/k")));
    }
    let table = build_table(k, required(a.radius, "radius")?, a.precision.unwrap_or(DEFAULT_BITS))?;
    let path = required(a.out, "out")?;
    write_atomic(&path, |w| table.write_csv(w))?;
    writeln!(
        out,
        "wrote {} to {}; worst identity residual {:.3e}",
        if table.dual_swapped { "dual-swapped table" } else { "table" },
        path.display(),
        table.residual_report.worst()
    )?;
    Ok(())
}

fn emit_grid(model: &ChiModel, g: &GridArgs, out: &mut dyn Write) -> Result<()> {
    let radius = required(g.radius, "radius")?;
    let (nx, ny) = parse_grid(&required(g.grid.clone(), "grid")?)?;
    let grid = chi_grid(model, nx, ny, radius)?;
    let path = required(g.out.clone(), "out")?;
    write_atomic(&path, |w| grid.write_csv(w))?;
    if let Some(p) = &g.pgm {
        write_atomic(p, |w| grid.write_pgm(w))?;
    }
    let peaks = find_peaks(&grid, g.denominator.unwrap_or(DEFAULT_DENOMINATOR));
    if let Some(p) = &g.peaks {
        write_atomic(p, |w| write_peaks_csv(&peaks, w))?;
    }
    writeln!(
        out,
        "{}: {nx}x{ny} grid, R = {radius}, range [{:.6e}, {:.6e}], tail bound {:.3e}, {} peaks",
        grid.source,
        grid.min(),
        grid.max(),
        grid.tail_bound,
        peaks.len()
    )?;
    Ok(())
}

fn run_chi(model: ChiCommand, cfg: &ConfigFile, out: &mut dyn Write) -> Result<()> {
    match model {
        ChiCommand::Uniform { mut k, mut grid } => {
            cfg.fill(&mut k, "k")?;
            fill_grid(cfg, &mut grid)?;
            let k = required(k, "k")?;
            check_k(k)?;
            let radius = required(grid.radius, "radius")?;
            let table = build_table(k, radius.max(2), grid.precision.unwrap_or(DEFAULT_BITS))?;
            emit_grid(&ChiModel::Uniform(&table), &grid, out)
        }
        ChiCommand::Frustrated { mut s, mut version, mut grid } => {
            cfg.fill(&mut s, "S")?;
            cfg.fill(&mut version, "version")?;
            fill_grid(cfg, &mut grid)?;
            let model = FrustratedModel::new(required(s, "S")?, required(version, "version")?.into())?;
            let radius = required(grid.radius, "radius")?;
            let table = build_table(model.modulus(), radius.div_ceil(2).max(2), grid.precision.unwrap_or(DEFAULT_BITS))?;
            emit_grid(&ChiModel::Frustrated(&model, &table), &grid, out)
        }
        ChiCommand::Gauge { mut k, mut j, mut gamma, mut window, mut grid } => {
            cfg.fill(&mut k, "k")?;
            cfg.fill(&mut j, "j")?;
            cfg.fill(&mut gamma, "gamma")?;
            cfg.fill(&mut window, "window")?;
            fill_grid(cfg, &mut grid)?;
            let k = required(k, "k")?;
            check_k(k)?;
            let spec = FibonacciSpec::new(required(j, "j")?, gamma.unwrap_or(0.0))?;
            let radius = required(grid.radius, "radius")?;
            let seq = sign_sequence(&spec, BitMap::default(), window.unwrap_or(DEFAULT_SIGN_WINDOW))?;
            let kappa = autocorrelation(&seq, radius)?;
            let table = build_table(k, radius.max(2), grid.precision.unwrap_or(DEFAULT_BITS))?;
            emit_grid(&ChiModel::ColumnGauge(&table, &kappa), &grid, out)
        }
    }
}

fn run_fib(mut a: FibArgs, cfg: &ConfigFile, out: &mut dyn Write) -> Result<()> {
    cfg.fill(&mut a.j, "j")?;
    cfg.fill(&mut a.gamma, "gamma")?;
    cfg.fill(&mut a.count, "count")?;
    cfg.flag(&mut a.signs, "signs")?;
    let spec = FibonacciSpec::new(required(a.j, "j")?, a.gamma.unwrap_or(0.0))?;
    let count = required(a.count, "count")?;
    if a.signs {
        for s in sign_sequence(&spec, BitMap::default(), count)?.signs {
            writeln!(out, "{s:+}")?;
        }
    } else {
        for b in fib_bits(&spec, count) {
            writeln!(out, "{b}")?;
        }
    }
    Ok(())
}

/// Verification outcome, separate from errors so it can map to its own exit code.
fn run_verify(mut a: VerifyArgs, cfg: &ConfigFile, out: &mut dyn Write) -> Result<bool> {
    cfg.fill(&mut a.tol, "tol")?;
    cfg.fill(&mut a.csv, "csv")?;
    let suite: Suite = a.suite.parse()?;
    let mut tol = Tolerances::default();
    if let Some(t) = a.tol {
        if !(t > 0.0) {
            return Err(Error::Configuration(format!("tolerance {t} must be positive")));
        }
        tol.oracle = t;
    }
    let report = run_suite(suite, &tol)?;
    write!(out, "{report}")?;
    if let Some(p) = &a.csv {
        write_atomic(p, |w| report.write_csv(w))?;
    }
    writeln!(out, "{}", if report.pass() { "verification passed" } else { "verification FAILED" })?;
    Ok(report.pass())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_)
        | Error::Configuration(_)
        | Error::Range(_)
        | Error::Capacity(_)
        | Error::Estimation(_)
        | Error::Pole { .. } => 2,
        _ => 1,
    }
}

fn configure_threads(threads: Option<&str>) -> Result<()> {
    if let Some(t) = threads {
        let n: usize = t
            .trim()
            .parse()
            .map_err(|_| Error::Configuration(format!("{THREADS_VAR} must be a positive integer, got {t:?}")))?;
        if n == 0 {
            return Err(Error::Configuration(format!("{THREADS_VAR} must be positive")));
        }
        // a pool may already exist when run in-process more than once
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs one invocation and returns the process exit code.
///
/// `threads` is the value of [`THREADS_VAR`], if set. Normal output goes to
/// `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, threads: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    let result = configure_threads(threads).and_then(|_| {
        let cfg = match &cli.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        match cli.command {
            Command::Corr(a) => run_corr(a, &cfg, out).map(|_| true),
            Command::Chi { model } => run_chi(model, &cfg, out).map(|_| true),
            Command::Fib(a) => run_fib(a, &cfg, out).map(|_| true),
            Command::Verify(a) => run_verify(a, &cfg, out),
        }
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["ising-chi"];
        argv.extend_from_slice(args);
        let code = run(argv, None, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn fib_prefix() {
        let (code, out, _) = call(&["fib", "--j", "0", "--gamma", "0", "--count", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0\n1\n0\n1\n1\n");
        let (_, signs, _) = call(&["fib", "--j", "0", "--count", "3", "--signs"]);
        assert_eq!(signs, "+1\n-1\n+1\n");
    }

    #[test]
    fn domain_errors_exit_two() {
        let dir = tempfile::tempdir().unwrap();
        let o = dir.path().join("x.csv");
        let (code, _, err) = call(&["chi", "uniform", "--k", "1.5", "--radius", "4", "--grid", "8x8", "--out", o.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(err.contains("(0, 1)") && err.lines().count() == 1);
        assert!(!o.exists());
        let (code, _, _) = call(&["corr", "--k", "2", "--radius", "4", "--out", o.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["verify", "nothing"]).0, 2);
    }

    #[test]
    fn config_supplies_defaults() {
        let cfg = ConfigFile::parse("# comment\nk = 0.5\n radius=3 # trailing\n").unwrap();
        let mut k: Option<f64> = Some(0.25);
        cfg.fill(&mut k, "k").unwrap();
        assert_eq!(k, Some(0.25));
        let mut r: Option<usize> = None;
        cfg.fill(&mut r, "radius").unwrap();
        assert_eq!(r, Some(3));
        assert!(ConfigFile::parse("no equals sign").is_err());
        assert_eq!(parse_grid("16x8").unwrap(), (16, 8));
        assert!(parse_grid("16").is_err());
    }
}
