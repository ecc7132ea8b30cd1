use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use microdyn_cli::config::{load_config, Scenario};
use microdyn_cli::run::run_experiment;

/// Batch runner for field-dynamical particle experiments.
#[derive(Debug, Parser)]
#[command(name = "microdyn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep a homogeneous external field: phase, density, and velocity shifts
    Homogeneous(RunArgs),
    /// Interferometer fringe shifts of both branches over a field sweep
    Interferometer(RunArgs),
    /// Send a beam through an inhomogeneous magnet and record the spots
    SternGerlach(RunArgs),
    /// Evolve the quadratic field combinations under static magnetic profiles
    Coupled(RunArgs),
    /// Fit deflection-vs-scale exponents under both force laws
    Compare(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Experiment configuration file
    #[arg(long)]
    config: PathBuf,
    /// Directory for the data and metadata files
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override the seed from the configuration
    #[arg(long)]
    seed: Option<u64>,
    /// Suppress normal output
    #[arg(long)]
    quiet: bool,
}

impl Command {
    fn split(self) -> (Scenario, RunArgs) {
        match self {
            Command::Homogeneous(args) => (Scenario::Homogeneous, args),
            Command::Interferometer(args) => (Scenario::Interferometer, args),
            Command::SternGerlach(args) => (Scenario::SternGerlach, args),
            Command::Coupled(args) => (Scenario::Coupled, args),
            Command::Compare(args) => (Scenario::Compare, args),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (scenario, args) = cli.command.split();

    let result = load_config(&args.config, scenario).and_then(|mut config| {
        if let Some(seed) = args.seed {
            config.seed = seed;
        }
        run_experiment(&config, &args.out)
    });

    match result {
        Ok(report) => {
            if !args.quiet {
                println!(
                    "{scenario}: {} rows -> {}",
                    report.rows,
                    report.data_path.display()
                );
                for (key, value) in &report.results {
                    println!("  {key} = {value}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
