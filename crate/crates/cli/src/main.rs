//! Command-line harness for the signature-(r, r, p) toolkit.
//!
//! Subcommands: analyze, contexts, fixture-type2, search, sweep. Every
//! subcommand prints one JSON document with sorted keys; big integers are
//! decimal strings. Exit codes: 0 success, 1 usage error, 2 invalid
//! mathematical input (including desk-scale cap violations), 3 property
//! failure in a sweep, 4 no valid (D, z) context.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rrp_core::{harness, Error};

const EXIT_CODES: &str = "Exit codes:\n  0  success\n  1  usage error\n  2  invalid mathematical input or desk-scale cap exceeded\n  3  property failure reported by sweep\n  4  no valid (D, z) context exists\n\nEnvironment:\n  RRP_DESK_CAP_BITS   cofactor cap in bits for integer factorization (default 64)\n  RRP_DESK_CAP_BOUND  maximum search/sweep bound (default 200)";

#[derive(Parser)]
#[command(
    name = "rrp",
    version,
    about = "Exact arithmetic for Fermat equations x^r + y^r = D*z^p",
    after_help = EXIT_CODES
)]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long = "json-out", global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an instance end to end: factor profile, ideal decomposition,
    /// both Frey curves, level data and the contradiction checklist.
    Analyze {
        #[arg(long)]
        r: u64,
        #[arg(long, allow_hyphen_values = true)]
        x: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        y: BigInt,
        #[arg(long)]
        p: u64,
        /// Coefficient D; enumerated from x^r + y^r when omitted.
        #[arg(long = "D", allow_hyphen_values = true)]
        d: Option<BigInt>,
        /// Cofactor z; derived or enumerated when omitted.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<BigInt>,
    },
    /// List candidate (D, z) pairs with z^p | x^r + y^r and validity flags.
    Contexts {
        #[arg(long)]
        r: u64,
        #[arg(long, allow_hyphen_values = true)]
        x: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        y: BigInt,
        #[arg(long)]
        p: u64,
    },
    /// Deterministic (x, y) with v_r(x + y) = p*k - 1 for type-2 testing.
    FixtureType2 {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive primitive-solution scan over coprime |x|, |y| <= bound.
    Search {
        #[arg(long)]
        r: u64,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: BigInt,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Batch property sweep over one or more r values.
    Sweep {
        /// Comma-separated list of primes, e.g. --r 7,11,13.
        #[arg(long, value_delimiter = ',')]
        r: Vec<u64>,
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
}

fn classify_error(err: &Error) -> i32 {
    match err {
        Error::NoValidContext => 4,
        _ => 2,
    }
}

fn emit(json: &str, json_out: Option<&PathBuf>) -> std::io::Result<()> {
    match json_out {
        Some(path) => std::fs::write(path, format!("{json}\n")),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> i32 {
    let outcome: Result<(String, i32), Error> = match cli.command {
        Command::Analyze { r, x, y, p, d, z } => {
            harness::analyze(r, &x, &y, p, d, z).map(|rep| (harness::to_sorted_json(&rep), 0))
        }
        Command::Contexts { r, x, y, p } => {
            harness::contexts(r, &x, &y, p).map(|rep| (harness::to_sorted_json(&rep), 0))
        }
        Command::FixtureType2 { r, p, k, seed } => {
            harness::fixture_type2(r, p, k, seed).map(|rep| (harness::to_sorted_json(&rep), 0))
        }
        Command::Search { r, d, p, bound } => {
            harness::search(r, &d, p, bound).map(|rep| (harness::to_sorted_json(&rep), 0))
        }
        Command::Sweep { r, bound } => harness::sweep(&r, bound).map(|rep| {
            let code = if rep.pass { 0 } else { 3 };
            (harness::to_sorted_json(&rep), code)
        }),
    };
    match outcome {
        Ok((json, code)) => {
            if let Err(e) = emit(&json, cli.json_out.as_ref()) {
                eprintln!("rrp: cannot write report: {e}");
                return 1;
            }
            code
        }
        Err(err) => {
            let code = classify_error(&err);
            let payload = serde_json::json!({
                "schema_version": harness::SCHEMA_VERSION,
                "error": { "code": code, "message": err.to_string() },
            });
            let json = serde_json::to_string_pretty(&payload).expect("error payload renders");
            let _ = emit(&json, cli.json_out.as_ref());
            eprintln!("rrp: {err}");
            code
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems exit 1; --help and --version exit 0.
            let is_usage = e.use_stderr();
            let _ = e.print();
            std::process::exit(if is_usage { 1 } else { 0 });
        }
    };
    std::process::exit(run(cli));
}
