//! `critgeo`: covering bounds, Cartan towers, Pauli brackets, Majorana code
//! search and Ricci curvature from the command line.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{Floats, Format, Report};
use std::fmt;
use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "critgeo",
    version,
    about = "Covering-number bounds for exponential penalty metrics on SU(2^N)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Torus diameters and covering bounds for a k or a k-range.
    Bounds(BoundsArgs),
    /// Level-k Cartan tower basis and its checks.
    Tower(TowerArgs),
    /// Product and bracket of Pauli words or expansions.
    Bracket(BracketArgs),
    /// Search for linear Majorana codes.
    CodeSearch(CodeSearchArgs),
    /// Ricci spectrum, optionally with the volume-comparison bound.
    Ricci(RicciArgs),
}

#[derive(Args, Clone, Copy)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Digits after the decimal point for floating values.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(0..=17))]
    precision: u8,
}

/// `--k 3` or an inclusive range `--k 1..10`.
#[derive(Clone, Copy, Debug)]
pub struct KRange {
    lo: usize,
    hi: usize,
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad k {s:?}; expected k or a..b"))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(KRange {
                lo: num(a)?,
                hi: num(b.strip_prefix('=').unwrap_or(b))?,
            }),
            None => {
                let k = num(s)?;
                Ok(KRange { lo: k, hi: k })
            }
        }
    }
}

impl fmt::Display for KRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Args)]
pub struct BoundsArgs {
    #[arg(long = "N")]
    n_qubits: usize,
    #[arg(long)]
    k: KRange,
    /// Penalty base, a decimal string (b > 1).
    #[arg(long, default_value = "4")]
    b: String,
    /// Critical diameter override (decimal); defaults to e_N.
    #[arg(long = "d-c")]
    d_c: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
pub struct TowerArgs {
    #[arg(long = "N")]
    n_qubits: usize,
    #[arg(long)]
    k: usize,
    /// Check X-type exclusion and a vanishing geodesic right-hand side on
    /// random elements of the tower.
    #[arg(long)]
    verify_geodesic: bool,
    #[arg(long, default_value_t = 100)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "4")]
    b: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
pub struct BracketArgs {
    /// A word such as `1XX`, or an expansion `X1:1, YX:-3/2`.
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, default_value = "4")]
    b: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchMethod {
    Exhaustive,
    Greedy,
}

impl SearchMethod {
    fn name(self) -> &'static str {
        match self {
            SearchMethod::Exhaustive => "exhaustive",
            SearchMethod::Greedy => "greedy",
        }
    }
}

#[derive(Args)]
pub struct CodeSearchArgs {
    /// Number of fermionic modes; strings have 2n bits.
    #[arg(long = "n")]
    n_modes: usize,
    #[arg(long, default_value = "clifford", value_parser = ["clifford", "paper"])]
    predicate: String,
    #[arg(long, value_enum, default_value = "greedy")]
    method: SearchMethod,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    iterations: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
pub struct RicciArgs {
    #[arg(long = "N")]
    n_qubits: usize,
    /// Any b > 0; the comparison rows need b > 1.
    #[arg(long, default_value = "4")]
    b: String,
    /// Add the volume-comparison bound and the topological comparison.
    #[arg(long)]
    bg: bool,
    /// Diameter of the covering sets; defaults to b.
    #[arg(long)]
    d: Option<f64>,
    #[arg(long = "d-c")]
    d_c: Option<String>,
    /// ln vol(SU(2^N)) at b = 1; defaults to the trace-normalised value.
    #[arg(long = "ln-vol-ref", allow_hyphen_values = true)]
    ln_vol_ref: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments or a capacity limit.
    Usage(String),
    /// A failed internal consistency check.
    Runtime(String),
}

impl From<critgeo::Error> for CliError {
    fn from(e: critgeo::Error) -> Self {
        match e {
            critgeo::Error::Consistency(_) => CliError::Runtime(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(Report, OutputArgs), CliError> {
    let floats = |o: &OutputArgs| Floats {
        precision: o.precision as usize,
    };
    Ok(match &cli.command {
        Command::Bounds(a) => (commands::bounds(a, floats(&a.out))?, a.out),
        Command::Tower(a) => (commands::tower(a, floats(&a.out))?, a.out),
        Command::Bracket(a) => (commands::bracket_cmd(a, floats(&a.out))?, a.out),
        Command::CodeSearch(a) => (commands::code_search(a, floats(&a.out))?, a.out),
        Command::Ricci(a) => (commands::ricci(a, floats(&a.out))?, a.out),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, out)) => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            if let Err(e) = report
                .write(out.format, &mut lock)
                .and_then(|_| lock.flush())
            {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
