//! `cyclic`: batch runner for cyclicity verdicts and maximal-domain scans.

mod commands;
mod job;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

/// Run a JSON job and write its artifacts, or replay a verdict certificate.
///
/// Exit status: 0 on success, 2 when the result is uncertain or
/// inconclusive, 1 on any error.
#[derive(Parser, Debug)]
#[command(name = "cyclic", version)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["job", "verify"]))]
struct Cli {
    /// Job specification (JSON).
    #[arg(long)]
    job: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker threads for the numeric engines (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Decimal digits for Gram assembly; overrides the job's `precision`.
    #[arg(long)]
    precision: Option<u32>,
    /// Replay the witness checks of a `verdict.json` without recomputing.
    #[arg(long)]
    verify: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error[threads]: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = match (&cli.job, &cli.verify) {
        (_, Some(cert)) => commands::verify(cert),
        (Some(job), None) => commands::run(job, &cli.out, cli.precision),
        (None, None) => unreachable!("clap requires one of --job or --verify"),
    };
    match outcome {
        Ok(commands::Outcome::Done) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Uncertain) => ExitCode::from(2),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
