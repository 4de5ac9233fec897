//! `chebprime` command-line tool.

mod commands;
mod output;
mod reproduce;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Format, OutputSpec};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or values outside a function's domain. Exit code 2.
    Usage(String),
    /// Unreadable or malformed input data, or an unwritable destination. Exit code 3.
    Data(String),
    /// A reproduction did not match its reference within tolerance. Exit code 1.
    Tolerance(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Tolerance(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::Tolerance(m) => write!(f, "tolerance failure: {m}"),
        }
    }
}

impl From<chebprime::Error> for CliError {
    fn from(e: chebprime::Error) -> Self {
        use chebprime::Error;
        match e {
            Error::Domain(_) | Error::Range(_) => CliError::Usage(e.to_string()),
            Error::Format { .. } | Error::Io(_) => CliError::Data(e.to_string()),
        }
    }
}

/// Integers, also written as `1e5` or `1_000_000`.
fn parse_int(s: &str) -> Result<u64, String> {
    let clean = s.replace('_', "");
    if let Ok(v) = clean.parse::<u64>() {
        return Ok(v);
    }
    match clean.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v < 9.007_199_254_740_992e15 => Ok(v as u64),
        _ => Err(format!("expected a non-negative integer, got {s:?}")),
    }
}

#[derive(Debug, Parser)]
#[command(name = "chebprime", version, about = "Chebyshev functions, li jumps, Chebyshev and Riemann primes")]
struct Cli {
    /// Output format (default: text; b-file for sequence reproductions).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Significant digits for real numbers.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u8).range(6..=17))]
    precision: u8,
    /// Worker threads for parallel scans.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List primes up to a limit.
    Primes(PrimesArgs),
    /// θ(x), ψ(x), ψ₀(x) and Λ(x) on an integer range.
    Chebfn(ChebfnArgs),
    /// The logarithmic integral, or ∫ dt/log t between two points.
    Li(LiArgs),
    /// Jumps of li∘θ or li∘ψ at primes and prime powers.
    Jumps(JumpsArgs),
    /// Chebyshev primes, their gaps and offsets, Riemann primes.
    Census {
        #[command(subcommand)]
        what: CensusCommand,
    },
    /// Prime counting approximations η_N, R and li.
    Count(CountArgs),
    /// Truncated explicit formula for ψ₀ over zeta zeros.
    Explicit(ExplicitArgs),
    /// Regenerate a reference table, figure or sequence and compare it.
    Reproduce(ReproduceArgs),
    /// Scan a range for counterexamples to a conjectured property.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct PrimesArgs {
    #[arg(long, value_parser = parse_int)]
    limit: u64,
}

#[derive(Debug, Args)]
struct ChebfnArgs {
    #[arg(long, value_parser = parse_int)]
    x: u64,
    /// Last argument of the range (default: x).
    #[arg(long, value_parser = parse_int)]
    to: Option<u64>,
}

#[derive(Debug, Args)]
struct LiArgs {
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// Integrate 1/log t from x to this point instead.
    #[arg(long)]
    to: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Theta,
    Psi,
}

impl From<KindArg> for chebprime::jumps::JumpKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Theta => Self::Theta,
            KindArg::Psi => Self::Psi,
        }
    }
}

#[derive(Debug, Args)]
struct JumpsArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, value_parser = parse_int)]
    limit: u64,
    #[arg(long, default_value_t = 1)]
    index: u32,
}

#[derive(Debug, Subcommand)]
enum CensusCommand {
    /// Chebyshev primes of an index with p^l <= limit.
    Chebyshev {
        #[arg(long, value_parser = parse_int)]
        limit: u64,
        #[arg(long, default_value_t = 1)]
        index: u32,
    },
    /// Riemann primes (champions of |f(p^l) − p^l|).
    Riemann {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        index: u32,
        #[arg(long, value_parser = parse_int)]
        limit: u64,
    },
    /// Ranks n <= N with Ch_n = p_{2n}.
    Zeros {
        #[arg(long, value_parser = parse_int)]
        ranks: u64,
    },
    /// Record gaps between consecutive Chebyshev primes.
    Gaps {
        #[arg(long, value_parser = parse_int)]
        limit: u64,
    },
    /// (n, Ch_n − p_{2n}) for n <= N.
    Offsets {
        #[arg(long, value_parser = parse_int)]
        ranks: u64,
    },
    /// Counts of Chebyshev primes below 10^k.
    Decades {
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        #[arg(long, default_value_t = 1)]
        index: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    All,
    Eta,
    Riemann,
    Gauss,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
struct CountArgs {
    #[command(subcommand)]
    table: Option<CountCommand>,
    #[arg(long, value_parser = parse_int)]
    x: Option<u64>,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Number of Möbius terms N.
    #[arg(short = 'N', long = "terms", default_value_t = 3)]
    terms: usize,
}

#[derive(Debug, Subcommand)]
enum CountCommand {
    /// Maximum |η_N| and truncated Riemann error over [2, limit].
    Table1 {
        #[arg(long, value_parser = parse_int, default_value = "10000")]
        limit: u64,
    },
    /// η_3, R − π and li − π at 1e6, 2e6, …, 1e7.
    Table2,
    /// η_N(x) at every integer x in [2, limit].
    Figure2 {
        #[arg(long, value_parser = parse_int, default_value = "1500")]
        limit: u64,
        #[arg(short = 'N', long = "terms", default_value_t = 3)]
        terms: usize,
    },
}

#[derive(Debug, Args)]
struct ExplicitArgs {
    #[arg(long)]
    x: f64,
    /// Zeros file, one ordinate per line (default: the bundled 1000 zeros).
    #[arg(long)]
    zeros: Option<PathBuf>,
    /// Number of zeros used (default: all).
    #[arg(long)]
    terms: Option<usize>,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    /// table1-1e4, table1-1e5, table2, fig1, fig2 or seq-<OEIS id>.
    target: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    conjecture: verify::Conjecture,
    #[arg(long, value_parser = parse_int)]
    limit: u64,
    #[arg(long, default_value_t = 1)]
    index: u32,
    #[arg(short = 'N', long = "terms", default_value_t = 3)]
    terms: usize,
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let spec = |default: Format| OutputSpec {
        format: cli.format.unwrap_or(default),
        precision: cli.precision as usize,
        destination: cli.out.clone(),
    };
    match cli.command {
        Command::Primes(a) => commands::primes(a.limit, &spec(Format::Text)),
        Command::Chebfn(a) => commands::chebfn(a.x, a.to.unwrap_or(a.x), &spec(Format::Text)),
        Command::Li(a) => commands::li(a.x, a.to, &spec(Format::Text)),
        Command::Jumps(a) => commands::jumps(a.kind.into(), a.limit, a.index, &spec(Format::Text)),
        Command::Census { what } => {
            let s = spec(Format::Text);
            match what {
                CensusCommand::Chebyshev { limit, index } => commands::census_chebyshev(limit, index, &s),
                CensusCommand::Riemann { kind, index, limit } => commands::census_riemann(kind.into(), index, limit, &s),
                CensusCommand::Zeros { ranks } => commands::census_zeros(ranks as usize, &s),
                CensusCommand::Gaps { limit } => commands::census_gaps(limit, &s),
                CensusCommand::Offsets { ranks } => commands::census_offsets(ranks as usize, &s),
                CensusCommand::Decades { kmax, index } => commands::census_decades(kmax, index, &s),
            }
        }
        Command::Count(a) => {
            let s = spec(Format::Text);
            match (a.table, a.x) {
                (Some(CountCommand::Table1 { limit }), _) => commands::table1(limit, &s),
                (Some(CountCommand::Table2), _) => commands::table2(&s),
                (Some(CountCommand::Figure2 { limit, terms }), _) => commands::figure2(limit, terms, &s),
                (None, Some(x)) => commands::count_at(x, a.method, a.terms, &s),
                (None, None) => Err(CliError::Usage("count needs --x or one of table1, table2, figure2".into())),
            }
        }
        Command::Explicit(a) => commands::explicit(a.x, a.zeros.as_deref(), a.terms, &spec(Format::Text)),
        Command::Reproduce(a) => {
            let default = reproduce::default_format(&a.target);
            reproduce::run(&a.target, &spec(default))
        }
        Command::Verify(a) => verify::run(a.conjecture, a.limit, a.index, a.terms, &spec(Format::Text)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chebprime: {e}");
            ExitCode::from(e.code())
        }
    }
}
