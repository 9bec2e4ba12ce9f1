//! `tmlab`: generalized Thue-Morse words from the command line.

mod commands;
mod error;
mod record;
mod rename;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::{CliError, Outcome};
use record::OutputRecord;

#[derive(Debug, Parser)]
#[command(name = "tmlab", version, about = "Generalized Thue-Morse words, critical exponents and critical powers")]
struct Cli {
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Print a JSON record instead of plain text.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Print position lists and verify tables as CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WordArgs {
    /// Base, also the block length.
    #[arg(short = 'b', value_name = "B")]
    base: u64,
    /// Alphabet size.
    #[arg(short = 'm', value_name = "M")]
    alphabet: u32,
    /// First letter of the word, a residue below m.
    #[arg(long, default_value_t = 0)]
    start: u32,
    /// Print letters with these m distinct symbols.
    #[arg(long, value_name = "SYMBOLS")]
    rename: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a prefix of the word.
    Generate {
        #[command(flatten)]
        word: WordArgs,
        /// Prefix length.
        #[arg(short = 'n', value_name = "LEN")]
        length: u64,
        /// Recompute the prefix from digit sums and compare.
        #[arg(long)]
        check: bool,
    },
    /// Print the critical exponent, optionally checked against a prefix scan.
    Critical {
        #[command(flatten)]
        word: WordArgs,
        /// Scan the first HORIZON letters (default: long enough to hold a critical power).
        #[arg(long, value_name = "HORIZON", num_args = 0..=1)]
        scan: Option<Option<u64>>,
    },
    /// List the start positions of critical powers with period N·b^i.
    Occurrences {
        #[command(flatten)]
        word: WordArgs,
        /// Base length N of the critical factor, not divisible by b.
        #[arg(short = 'N', value_name = "N")]
        n: u64,
        /// Scale exponent: the factor has length N·b^i.
        #[arg(short = 'i', default_value_t = 0)]
        scale: u32,
        /// Only positions below BOUND.
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        /// Compare against a brute-force scan of the prefix.
        #[arg(long)]
        verify: bool,
    },
    /// Run the invariant suites over a grid of parameters.
    Verify(verify::VerifyArgs),
}

fn max_positions() -> Result<u64, CliError> {
    match std::env::var("TMLAB_MAX_POSITIONS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("TMLAB_MAX_POSITIONS must be an integer, got {v:?}"))),
        Err(_) => Ok(10_000_000),
    }
}

fn render(record: &OutputRecord, output: &OutputArgs) -> Result<String, CliError> {
    if output.json {
        record.to_json()
    } else if output.csv {
        record.to_csv()
    } else {
        Ok(record.to_plain())
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    if cli.output.csv && !matches!(cli.command, Command::Occurrences { .. } | Command::Verify(_)) {
        return Err(CliError::usage("--csv applies to position lists and verify tables"));
    }
    let cap = max_positions()?;
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let (record, outcome) = match cli.command {
        Command::Generate { word, length, check } => commands::generate(&word, length, check, cap)?,
        Command::Critical { word, scan } => commands::critical(&word, scan, cap)?,
        Command::Occurrences {
            word,
            n,
            scale,
            bound,
            verify,
        } => commands::occurrences(&word, n, scale, bound, verify, cap)?,
        Command::Verify(args) => verify::run(&args, cap)?,
    };
    let record = OutputRecord { command: echo, ..record };
    let text = render(&record, &cli.output)?;
    match &cli.output.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    // clap exits with status 2 on bad arguments
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("tmlab: {e}");
            e.exit_code()
        }
    }
}
