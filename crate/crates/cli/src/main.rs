//! `darboux`: runs the transformation checks described by a TOML config.

mod commands;
mod config;
mod error;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use darboux_core::io::write_atomic;

use crate::commands::Outcome;
use crate::config::{Loaded, Overrides};
use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "darboux", version, about = "Darboux-transformed half-line Schrödinger operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Jost solution and Jost function of the base potential.
    Jost(Args),
    /// Transformation data and normalized eigenfunctions.
    Transform(Args),
    /// Regularized resolution of the identity on the test battery.
    Identity(Args),
    /// Smeared biorthonormality functional.
    Binorm(Args),
    /// Scan of the boundary functional for spectral singularities.
    Scan(Args),
    /// Closed-form checks for the free transformed operator.
    SchwartzCheck(Args),
}

#[derive(Debug, clap::Args)]
struct Args {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output.dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `regularization.epsilon`.
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<f64>,
    /// Use epsilon with the given sign instead of the sign of b.
    #[arg(long)]
    override_epsilon_sign: bool,
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("DARBOUX_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().map_err(|_| CliError::Threads {
        value: value.clone(),
        reason: "not a positive integer".into(),
    })?;
    if threads == 0 {
        return Err(CliError::Threads {
            value,
            reason: "must be at least 1".into(),
        });
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Threads {
            value,
            reason: e.to_string(),
        })
}

fn output_dir(args: &Args, run: &Loaded) -> PathBuf {
    if let Some(out) = &args.out {
        return out.clone();
    }
    match &run.config.output.dir {
        Some(dir) => run.path.parent().unwrap_or(Path::new(".")).join(dir),
        None => PathBuf::from("out"),
    }
}

fn write(dir: &Path, outcome: &Outcome) -> Result<PathBuf> {
    for (name, contents) in &outcome.files {
        write_atomic(&dir.join(name), contents.as_bytes())?;
    }
    let path = dir.join(format!("{}_verdict.json", outcome.verdict.command));
    let json = serde_json::to_string_pretty(&outcome.verdict)? + "\n";
    write_atomic(&path, json.as_bytes())?;
    Ok(path)
}

fn run(cli: Cli) -> Result<bool> {
    let (args, command): (&Args, fn(&Loaded) -> Result<Outcome>) = match &cli.command {
        Command::Jost(a) => (a, commands::jost),
        Command::Transform(a) => (a, commands::transform),
        Command::Identity(a) => (a, commands::identity),
        Command::Binorm(a) => (a, commands::binorm),
        Command::Scan(a) => (a, commands::scan),
        Command::SchwartzCheck(a) => (a, commands::schwartz_check),
    };
    let overrides = Overrides {
        epsilon: args.epsilon,
        override_epsilon_sign: args.override_epsilon_sign,
    };
    let loaded = config::load(&args.config, overrides)?;
    configure_threads()?;
    let outcome = command(&loaded)?;
    let path = write(&output_dir(args, &loaded), &outcome)?;
    let v = &outcome.verdict;
    println!("{}: {} (tolerance {:e}) -> {}", v.command, v.verdict, v.tolerance, path.display());
    for (name, value) in &v.metrics {
        if value.fract() == 0.0 && value.abs() < 1e15 {
            println!("  {name} = {value}");
        } else {
            println!("  {name} = {value:.6e}");
        }
    }
    Ok(v.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
