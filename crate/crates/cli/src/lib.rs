//! Command-line driver for the verification suites.

pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use regnilp_core::exactalg::is_prime;
use regnilp_core::{CartanType, RootKind};
use serde_json::json;

pub use report::{CaseReport, SuiteReport, Summary};
pub use suites::Params;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Exponents,
    Regular,
    Springer,
    TheoremA,
    Nonsmooth,
    Flags,
    Ptangent,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Exponents => "exponents",
            Suite::Regular => "regular",
            Suite::Springer => "springer",
            Suite::TheoremA => "theorem-a",
            Suite::Nonsmooth => "nonsmooth",
            Suite::Flags => "flags",
            Suite::Ptangent => "ptangent",
            Suite::All => "all",
        }
    }

    const EACH: [Suite; 7] = [
        Suite::Exponents,
        Suite::Regular,
        Suite::Springer,
        Suite::TheoremA,
        Suite::Nonsmooth,
        Suite::Flags,
        Suite::Ptangent,
    ];
}

#[derive(Parser, Debug)]
#[command(name = "regnilp", version, about = "Exact checks around regular nilpotent elements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Root system type, either a letter (with --rank) or a label like G2.
    #[arg(long = "type")]
    pub kind: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Prime (repeatable).
    #[arg(long = "prime")]
    pub primes: Vec<u64>,
    /// Matrix size for the gl_n suites.
    #[arg(long)]
    pub n: Option<usize>,
    /// Springer coefficients a_1,a_2,... as integers or fractions.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<String>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the structured report to this path.
    #[arg(long)]
    pub json: Option<std::path::PathBuf>,
    #[arg(long)]
    pub include_e_types: bool,
    /// Tolerance for the Coxeter spectrum comparison.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Treat skipped checks as failures.
    #[arg(long)]
    pub strict: bool,
    /// Report a wall time of zero so reports are reproducible byte for byte.
    #[arg(long)]
    pub no_timing: bool,
}

fn parse_ratio(s: &str) -> Result<(i64, i64), String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: i64 = num.parse().map_err(|_| format!("bad coefficient `{s}`"))?;
    let den: i64 = den.parse().map_err(|_| format!("bad coefficient `{s}`"))?;
    if den == 0 {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok((num, den))
}

impl VerifyArgs {
    pub fn params(&self) -> Result<Params, String> {
        let (kind, mut rank) = match self.kind.as_deref() {
            None => (None, None),
            Some(s) if s.chars().skip(1).any(|c| c.is_ascii_digit()) => {
                let t: CartanType = s.parse().map_err(|e| format!("--type {s}: {e}"))?;
                if self.rank.is_some_and(|r| r != t.rank) {
                    return Err(format!("--type {s} conflicts with --rank"));
                }
                (Some(t.kind), Some(t.rank))
            }
            Some(s) => {
                let mut chars = s.chars();
                let k = match (chars.next(), chars.next()) {
                    (Some(c), None) => RootKind::from_letter(c),
                    _ => None,
                };
                (Some(k.ok_or_else(|| format!("unknown type `{s}`"))?), None)
            }
        };
        if rank.is_none() {
            rank = self.rank;
        }
        if let (Some(k), Some(r)) = (kind, rank) {
            CartanType::new(k, r).map_err(|e| e.to_string())?;
        }
        for &p in &self.primes {
            if !is_prime(p) || p > u32::MAX as u64 {
                return Err(format!("--prime {p} is not a supported prime"));
            }
        }
        if self.n == Some(0) {
            return Err("--n must be positive".into());
        }
        if matches!(self.suite, Suite::Springer | Suite::All) && self.n == Some(1) {
            return Err("the springer suite needs --n at least 2".into());
        }
        let coeffs = match &self.coeffs {
            None => None,
            Some(cs) => {
                let parsed = cs.iter().map(|c| parse_ratio(c)).collect::<Result<Vec<_>, _>>()?;
                if parsed.is_empty() {
                    return Err("--coeffs needs at least one value".into());
                }
                Some(parsed)
            }
        };
        if !(self.tol >= 0.0) {
            return Err("--tol must be nonnegative".into());
        }
        let params = Params {
            kind,
            rank,
            primes: self.primes.clone(),
            n: self.n,
            coeffs,
            seed: self.seed,
            include_e_types: self.include_e_types,
            tol: self.tol,
        };
        if let Some(cs) = &params.coeffs {
            let primes = if params.primes.is_empty() {
                vec![5, 7, 13]
            } else {
                params.primes.clone()
            };
            for p in primes {
                let (a, b) = cs[0];
                if a.rem_euclid(p as i64) == 0 || b.rem_euclid(p as i64) == 0 {
                    return Err(format!("a_1 = {a}/{b} is not invertible mod {p}"));
                }
            }
        }
        Ok(params)
    }
}

pub fn run_cases(suite: Suite, params: &Params) -> Vec<CaseReport> {
    match suite {
        Suite::Exponents => suites::exponents(params),
        Suite::Regular => suites::regular(params),
        Suite::Springer => suites::springer(params),
        Suite::TheoremA => suites::gl_centers(params),
        Suite::Nonsmooth => suites::nonsmooth(params),
        Suite::Flags => suites::flags(params),
        Suite::Ptangent => suites::ptangent(params),
        Suite::All => Suite::EACH
            .iter()
            .flat_map(|&s| {
                run_cases(s, params).into_iter().map(move |mut c| {
                    c.parameters.insert("suite".into(), json!(s.name()));
                    c
                })
            })
            .collect(),
    }
}

pub fn run_suite(suite: Suite, params: &Params) -> SuiteReport {
    let start = Instant::now();
    let cases = run_cases(suite, params);
    SuiteReport::new(suite.name(), cases, start.elapsed().as_secs_f64())
}

/// Parses arguments, runs the suite and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let Command::Verify(args) = cli.command;
    let params = match args.params() {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let mut report = run_suite(args.suite, &params);
    if args.no_timing {
        report.wall_time = 0.0;
    }
    print!("{}", report.to_text());
    if let Some(path) = &args.json {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    report.exit_code(args.strict)
}
