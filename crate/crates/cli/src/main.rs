use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use charmod::cmr::parse;
use charmod::run::{init_thread_pool, run, Command, Options};

#[derive(Parser)]
#[command(name = "charmod", version, about = "Characteristic modules of graded quotient rings")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of corpus instances.
    #[arg(long, global = true, default_value_t = 20)]
    count: usize,

    /// Steps of the resolution over R computed by `res`.
    #[arg(long, global = true)]
    max_steps: Option<usize>,

    /// Degree bound for Hilbert function comparisons and isomorphism probes.
    #[arg(long, global = true)]
    degree_bound: Option<i32>,

    /// Module to operate on: a name from the document, `R` or `k`.
    #[arg(long, global = true)]
    module: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis of the ideal, and of the module relations with --module.
    Gb { file: PathBuf },
    /// Graded Betti table over the polynomial ring.
    Res { file: PathBuf },
    Invariants { file: PathBuf },
    /// The characteristic module T(M).
    Tmod { file: PathBuf },
    /// The cocharacteristic module E(M).
    Emod { file: PathBuf },
    /// The quasi-canonical module E.
    Canonical { file: PathBuf },
    /// Run a theorem checker: thm8, type, type-depth, gorenstein, cor-id, cor-artinian,
    /// faithful, prop2, split or all.
    Check { suite: String, file: PathBuf },
    /// Run the per-instance checks over a generated corpus (monomial, binomial, ci, mixed).
    Corpus { profile: String },
    /// Search for modules isomorphic to their characteristic module over non-Gorenstein rings.
    HuntCounterexample,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, Box<dyn std::error::Error>> {
    let (command, file) = match &cli.command {
        Cmd::Gb { file } => (Command::Gb, Some(file)),
        Cmd::Res { file } => (Command::Res, Some(file)),
        Cmd::Invariants { file } => (Command::Invariants, Some(file)),
        Cmd::Tmod { file } => (Command::Tmod, Some(file)),
        Cmd::Emod { file } => (Command::Emod, Some(file)),
        Cmd::Canonical { file } => (Command::Canonical, Some(file)),
        Cmd::Check { suite, file } => (Command::Check(suite.parse()?), Some(file)),
        Cmd::Corpus { profile } => (Command::Corpus(profile.parse()?), None),
        Cmd::HuntCounterexample => (Command::HuntCounterexample, None),
    };
    let doc = match file {
        Some(path) => Some(parse(&std::fs::read_to_string(path)?)?),
        None => None,
    };
    let opts = Options {
        seed: cli.seed,
        count: cli.count,
        max_steps: cli.max_steps,
        degree_bound: cli.degree_bound,
        module: cli.module.clone(),
    };
    let report = run(command, doc.as_ref(), &opts)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.exit_code() as u8)
}
