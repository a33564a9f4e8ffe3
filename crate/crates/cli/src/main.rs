use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use revassign_cli::commands::{
    cmd_assign, cmd_bench, cmd_gen, cmd_irm, cmd_similarity, AssignArgs, BenchArgs, GenArgs,
    IrmArgs, SimilarityArgs,
};

/// Reviewer-to-paper assignment.
#[derive(Parser)]
#[command(name = "revassign", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset.
    Gen(GenArgs),
    /// Compute the similarity matrix of a dataset.
    Similarity(SimilarityArgs),
    /// Assign reviewers to papers.
    Assign(AssignArgs),
    /// Simulate iterative bidding with predicted ratings.
    Irm(IrmArgs),
    /// Compare the algorithms on many synthetic instances.
    Bench(BenchArgs),
}

fn run(cli: Cli) -> Result<()> {
    let stdout = std::io::stdout();
    match cli.command {
        Command::Gen(args) => {
            let summary = cmd_gen(&args)?;
            eprint!("{summary}");
        }
        Command::Similarity(args) => {
            let summary = cmd_similarity(&args)?;
            if args.out.as_os_str() == "-" {
                eprint!("{summary}");
            } else {
                stdout.lock().write_all(summary.as_bytes())?;
            }
        }
        Command::Assign(args) => {
            let run = cmd_assign(&args)?;
            for w in &run.warnings {
                eprintln!("warning: {w}");
            }
            stdout.lock().write_all(run.report.as_bytes())?;
        }
        Command::Irm(args) => {
            let run = cmd_irm(&args)?;
            stdout.lock().write_all(run.report.as_bytes())?;
        }
        Command::Bench(args) => {
            let report = cmd_bench(&args)?;
            stdout.lock().write_all(report.as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
