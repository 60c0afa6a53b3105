use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::runner::config::{parse_residues, parse_root, split_csv, Command, ConfigFile, Format, Range, RunConfig};
use crate::runner::{emit, exit, resolve_timestamp, run};

#[derive(Debug, Parser)]
#[command(name = "trigres", version, about = "Check trigonometric identities over quadratic residues and scan conjectures")]
pub struct Args {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Check catalog identities over ranges of n or p.
    Verify(Flags),
    /// Scan one conjecture (or h_csc, eq43) over a prime range.
    Scan(Flags),
    /// Dump class numbers, units and s_p, t_p per prime.
    Invariants(Flags),
    /// Evaluate S_p at roots of unity and try to recognize the values.
    Explore(Flags),
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Flags {
    /// TOML file with defaults for any flag below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated identity ids, or `all`.
    #[arg(long)]
    pub identities: Option<String>,
    #[arg(long)]
    pub conjecture: Option<String>,
    /// Prime range, `A..B` inclusive.
    #[arg(long)]
    pub primes: Option<String>,
    /// Range of n, `A..B` inclusive.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub bits: Option<u32>,
    /// Random points per index for identities with complex variables.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated values of `a` for identities that take one.
    #[arg(long)]
    pub a: Option<String>,
    /// Search bound on y for Pell-type representations.
    #[arg(long)]
    pub pell_bound: Option<u64>,
    /// Residue filter on p, `M:R1,R2`.
    #[arg(long)]
    pub residues: Option<String>,
    /// Roots of unity for `explore`, comma-separated `J/M`.
    #[arg(long)]
    pub root: Option<String>,
    /// Override the pass threshold to 2^T.
    #[arg(long, allow_hyphen_values = true)]
    pub tolerance_log2: Option<i64>,
    /// Do not retry failures at doubled precision.
    #[arg(long)]
    pub no_escalate: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// json or csv.
    #[arg(long)]
    pub format: Option<String>,
    /// Header timestamp; defaults to SOURCE_DATE_EPOCH, then the clock.
    #[arg(long)]
    pub timestamp: Option<String>,
}

fn parse_a(s: &str) -> Result<Vec<i64>> {
    split_csv(s)
        .iter()
        .map(|t| t.parse().map_err(|_| Error::Config(format!("cannot parse --a value `{t}`"))))
        .collect()
}

/// Merges flags over the config file over the built-in defaults. Returns
/// the run configuration and the explicit timestamp, if any.
pub fn resolve(command: Command, flags: &Flags) -> Result<(RunConfig, Option<String>)> {
    let file = match &flags.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let mut cfg = RunConfig::new(command);
    if let Some(s) = flags.identities.as_ref().or(file.identities.as_ref()) {
        cfg.identities = split_csv(s);
    }
    cfg.conjecture = flags.conjecture.clone().or(file.conjecture);
    if let Some(s) = flags.primes.as_ref().or(file.primes.as_ref()) {
        cfg.primes = Some(s.parse::<Range>()?);
    }
    if let Some(s) = flags.n.as_ref().or(file.n.as_ref()) {
        cfg.n = Some(s.parse::<Range>()?);
    }
    if let Some(b) = flags.bits.or(file.bits) {
        cfg.bits = b;
    }
    if let Some(s) = flags.samples.or(file.samples) {
        cfg.samples = s;
    }
    cfg.seed = flags.seed.or(file.seed);
    if let Some(s) = flags.a.as_ref().or(file.a.as_ref()) {
        cfg.a_values = parse_a(s)?;
    }
    if let Some(b) = flags.pell_bound.or(file.pell_bound) {
        cfg.pell_bound = b;
    }
    if let Some(s) = flags.residues.as_ref().or(file.residues.as_ref()) {
        cfg.residues = Some(parse_residues(s)?);
    }
    if let Some(s) = flags.root.as_ref().or(file.roots.as_ref()) {
        cfg.roots = split_csv(s).iter().map(|t| parse_root(t)).collect::<Result<_>>()?;
    }
    cfg.tolerance_log2 = flags.tolerance_log2.or(file.tolerance_log2);
    cfg.escalate = !(flags.no_escalate || file.no_escalate.unwrap_or(false));
    cfg.out = flags.out.clone().or(file.out);
    if let Some(s) = flags.format.as_ref().or(file.format.as_ref()) {
        cfg.format = s.parse::<Format>()?;
    }
    cfg.validate()?;
    Ok((cfg, flags.timestamp.clone().or(file.timestamp)))
}

fn execute(args: Args) -> Result<i32> {
    let (command, flags) = match &args.command {
        Sub::Verify(f) => (Command::Verify, f),
        Sub::Scan(f) => (Command::Scan, f),
        Sub::Invariants(f) => (Command::Invariants, f),
        Sub::Explore(f) => (Command::Explore, f),
    };
    let (cfg, ts) = resolve(command, flags)?;
    let timestamp = resolve_timestamp(ts.as_deref())?;
    let outcome = run(&cfg, &timestamp)?;
    if let Some(text) = emit(&cfg, &outcome.report)? {
        std::io::stdout().lock().write_all(text.as_bytes())?;
    }
    let s = outcome.report.summary;
    eprintln!("pass {} fail {} inconclusive {}", s.pass, s.fail, s.inconclusive);
    Ok(outcome.exit_code)
}

/// Entry point of the `trigres` binary. Returns the process exit code:
/// 0 all pass, 1 any failure, 2 usage or configuration error, 3 some
/// inconclusive and none failed.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::PASS };
        }
    };
    match execute(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit::USAGE
        }
    }
}
