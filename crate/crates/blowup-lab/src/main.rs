use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use blowup_lab::evolution::Termination;
use blowup_lab::runner::{run_experiment, Config, ExperimentKind, RunOutcome};

/// Deterministic experiment runner for the blow-up laboratory.
///
/// Exit codes: 0 on success, 2 on configuration or validation failure,
/// 3 on numerical failure (a field became non-finite).
#[derive(Parser)]
#[command(name = "blowup-lab", version, about)]
struct Cli {
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Reserved: no stochastic components exist yet; accepted and ignored.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Reserved: runs are single-threaded; accepted and ignored.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Build initial data, evolve it, and write the diagnostics series.
    Simulate,
    /// Run the inequality scan suite and write one report per property.
    VerifyLemmas,
    /// Integrate the blow-up comparison system and report its pole.
    OdeCompare,
    /// Repeat a simulation over a parameter grid with a summary table.
    Sweep,
    /// Cross-check the kernel construction (image sums, trace integral).
    DeriveKernel,
}

impl CliCommand {
    fn experiment(&self) -> ExperimentKind {
        match self {
            CliCommand::Simulate => ExperimentKind::Simulate,
            CliCommand::VerifyLemmas => ExperimentKind::VerifyLemmas,
            CliCommand::OdeCompare => ExperimentKind::OdeCompare,
            CliCommand::Sweep => ExperimentKind::Sweep,
            CliCommand::DeriveKernel => ExperimentKind::DeriveKernel,
        }
    }
}

fn describe(outcome: &RunOutcome) {
    match outcome.termination {
        Some(t) => println!(
            "run finished: termination {:?}, {} series rows, output in {}",
            t,
            outcome.rows,
            outcome.out_dir.display()
        ),
        None => println!(
            "done: {} report(s), {} row(s), output in {}",
            outcome.report_files.len(),
            outcome.rows,
            outcome.out_dir.display()
        ),
    }
    for f in &outcome.report_files {
        println!("  report: {}", f.display());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.seed.is_some() {
        eprintln!("note: --seed is reserved and currently ignored");
    }
    if cli.threads.is_some() {
        eprintln!("note: --threads is reserved and currently ignored");
    }

    let mut cfg = match &cli.config {
        Some(path) => match Config::from_file(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        },
        None => Config::default(),
    };
    // The subcommand decides what runs; the config's `experiment` field
    // matters only when configs are replayed through `run_experiment`.
    cfg.experiment = cli.command.experiment();

    match run_experiment(&cfg, &cli.out) {
        Ok(outcome) => {
            describe(&outcome);
            if outcome.termination == Some(Termination::NonFinite) {
                eprintln!("error: a field became non-finite during the run");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
