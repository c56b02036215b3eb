//! `isoquad` binary: one entry point for every verification in the
//! library, with table output for people and `--json` for machines.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CountArgs, ExperimentArgs};

#[derive(Parser)]
#[command(
    name = "isoquad",
    version,
    about = "Exact arithmetic checks for ranks, flips, decompositions, and \
             isotropic subspace counts of nets of quadrics"
)]
struct Cli {
    /// Emit the run report as one JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the rank identities over an inclusive genus range.
    Ranks {
        /// Genus range `lo..hi`, inclusive on both ends, within 2..200.
        #[arg(long, value_name = "LO..HI")]
        g: String,
    },
    /// Brute-force the subset-pair identity and the exact variance identity.
    Identity {
        /// Largest genus to check, at most 14.
        #[arg(long = "max-g", value_name = "G")]
        max_g: u32,
    },
    /// Report one stage of the component ledger.
    Sod {
        /// Genus, at least 2.
        #[arg(long)]
        g: u32,
        /// Stage index, in 0..=g-1.
        #[arg(long)]
        k: u32,
        /// List every component (only for 2g+1 <= 17).
        #[arg(long)]
        list: bool,
    },
    /// Walk the flip chain from the starting model to the full rank.
    Flips {
        /// Genus, at least 2.
        #[arg(long)]
        g: u32,
        /// Print per-step bookkeeping.
        #[arg(long)]
        trace: bool,
        /// Refine stage ranks into polynomials and check their shape.
        #[arg(long)]
        poincare: bool,
    },
    /// Count totally isotropic subspaces over a prime field.
    Count {
        /// Odd prime modulus.
        #[arg(long)]
        p: Option<u64>,
        /// Genus, at least 2.
        #[arg(long)]
        g: Option<u32>,
        /// Comma-separated parameter list, 2g+1 values, distinct mod p.
        #[arg(long, value_name = "A1,A2,..")]
        params: Option<String>,
        /// Named parameter rule; `consecutive` means 1..2g+1.
        #[arg(long)]
        rule: Option<String>,
        /// TOML file with keys p, g, and params or rule.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        /// Also run the unpruned oracle and compare (small instances only).
        #[arg(long)]
        naive: bool,
        /// Evaluate the final stage polynomial at p and report the difference.
        #[arg(long)]
        compare: bool,
        /// Print every accepted subspace as an RREF matrix.
        #[arg(long)]
        verbose: bool,
        /// Candidate budget; enumeration refuses instances above it.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check that a parameter file yields hyperplanes in general position.
    Snc {
        /// Ambient projective dimension.
        #[arg(long)]
        k: usize,
        /// UTF-8 file, one rational per line, `#` comments allowed.
        #[arg(long = "params-file", value_name = "FILE")]
        params_file: PathBuf,
    },
    /// Compare counts against stage-polynomial values across several primes.
    Experiment {
        /// Genus, at least 2.
        #[arg(long)]
        g: u32,
        /// Comma-separated list of primes to try.
        #[arg(long, value_name = "P1,P2,..")]
        primes: String,
        /// Comma-separated parameter list; defaults to the consecutive rule.
        #[arg(long, value_name = "A1,A2,..")]
        params: Option<String>,
        /// Candidate budget applied to every prime.
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ranks { g } => commands::ranks(g),
        Command::Identity { max_g } => commands::identity(*max_g),
        Command::Sod { g, k, list } => commands::sod(*g, *k, *list),
        Command::Flips { g, trace, poincare } => commands::flips(*g, *trace, *poincare),
        Command::Count {
            p,
            g,
            params,
            rule,
            config,
            naive,
            compare,
            verbose,
            budget,
        } => commands::count(&CountArgs {
            p: *p,
            g: *g,
            params: params.clone(),
            rule: rule.clone(),
            config: config.clone(),
            naive: *naive,
            compare: *compare,
            verbose: *verbose,
            budget: *budget,
        }),
        Command::Snc { k, params_file } => commands::snc(*k, params_file),
        Command::Experiment {
            g,
            primes,
            params,
            budget,
        } => commands::experiment(&ExperimentArgs {
            g: *g,
            primes: primes.clone(),
            params: params.clone(),
            budget: *budget,
        }),
    };
    match result {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.render_table());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
