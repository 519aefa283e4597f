use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use hpek_cli::{
    parse_algorithm_spec, parse_format_spec, run, CliError, Experiment, ExperimentReport,
    RunConfig,
};

/// Evaluate hash algorithms for proof-of-work use: digest heterogeneity
/// entropy, nonce distributions, and per-digest timing, with CSV/JSON/SVG
/// reports.
#[derive(Parser)]
#[command(name = "hpek", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy between each chain digest and its predecessor
    Heterogeneity(CommonArgs),
    /// Minimum pairwise entropy over all chain digests
    MinEntropy(CommonArgs),
    /// Proof-of-work nonce distribution
    Pow(CommonArgs),
    /// Per-digest computation time
    Bench(CommonArgs),
    /// Mine and verify a small block chain
    ChainDemo(CommonArgs),
    /// Run every experiment
    All(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Algorithms: comma-separated names, or "all" / "mainstream"
    #[arg(long, default_value = "all")]
    alg: String,

    /// Chain length for the heterogeneity experiments
    #[arg(short = 'm', long = "samples", default_value_t = 32_768)]
    samples: usize,

    /// Difficulty: required leading zero bits
    #[arg(long, default_value_t = 8)]
    k: u32,

    /// Proof-of-work trials
    #[arg(long, default_value_t = 32_768)]
    trials: u64,

    /// Timed repetitions per algorithm
    #[arg(long, default_value_t = 10_000)]
    reps: usize,

    /// Message size in bytes for the timing experiment
    #[arg(long, default_value_t = 32)]
    msg_bytes: usize,

    /// Seed string for chains and proof-of-work content
    #[arg(long, default_value = "block-0")]
    seed: String,

    /// Output directory
    #[arg(long, default_value = "hpek-out")]
    out: PathBuf,

    /// Output formats: comma-separated subset of csv,json,svg
    #[arg(long, default_value = "csv,json,svg")]
    format: String,
}

fn build_config(args: &CommonArgs, experiments: &[Experiment]) -> Result<RunConfig, CliError> {
    let threads = match std::env::var("HPEK_THREADS") {
        Ok(value) => value.parse::<usize>().map_err(|_| {
            CliError::Usage(format!("HPEK_THREADS must be a non-negative integer, got '{value}'"))
        })?,
        Err(_) => 0,
    };
    Ok(RunConfig {
        experiments: BTreeSet::from_iter(experiments.iter().copied()),
        algorithms: parse_algorithm_spec(&args.alg)?,
        m: args.samples,
        k: args.k,
        trials: args.trials,
        reps: args.reps,
        message_bytes: args.msg_bytes,
        seed: args.seed.clone(),
        output_dir: args.out.clone(),
        formats: parse_format_spec(&args.format)?,
        threads,
    })
}

fn print_report(report: &ExperimentReport) {
    for outcome in &report.outcomes {
        println!("== {} ==", outcome.experiment.name());
        println!("{:<12} {:>12} {:>12} {:>12} {:>9}", "algorithm", "q1", "median", "q3", "n");
        for row in &outcome.rows {
            println!(
                "{:<12} {:>12} {:>12} {:>12} {:>9}",
                row.algorithm,
                format_stat(row.q1),
                format_stat(row.median),
                format_stat(row.q3),
                row.n
            );
        }
        for warning in &outcome.warnings {
            println!("warning: {warning}");
        }
        for path in outcome
            .summary_file
            .iter()
            .chain(outcome.figure_file.iter())
            .chain(outcome.raw_files.iter())
        {
            println!("wrote {}", path.display());
        }
        println!();
    }
    println!(
        "done in {:.2?} on {} ({})",
        report.runtime, report.host.cpu_model, report.host.arch
    );
}

fn format_stat(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e12 {
        format!("{v:.0}")
    } else {
        format!("{v:.4}")
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let (args, experiments): (&CommonArgs, &[Experiment]) = match &cli.command {
        Command::Heterogeneity(args) => (args, &[Experiment::HeterogeneityAdjacent]),
        Command::MinEntropy(args) => (args, &[Experiment::HeterogeneityMin]),
        Command::Pow(args) => (args, &[Experiment::Pow]),
        Command::Bench(args) => (args, &[Experiment::Timing]),
        Command::ChainDemo(args) => (args, &[Experiment::ChainDemo]),
        Command::All(args) => (args, &Experiment::ALL),
    };

    let config = match build_config(args, experiments) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };

    match run(&config) {
        Ok(report) => {
            print_report(&report);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
