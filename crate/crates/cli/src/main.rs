use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use turing_passage::{parse_config, parse_config_str, resolve_out_dir, run, CliError, Command, ExperimentSpec};

/// Slow passage through a Turing instability: simulation, blow-up
/// approximation and their comparison.
#[derive(Parser, Debug)]
#[command(name = "turing-passage", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// TOML configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output directory (overridden by TP_OUT_DIR).
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long)]
    seed: Option<u64>,

    /// Worker threads for sweeps; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,

    /// Hierarchy order for `derive`.
    #[arg(long)]
    order: Option<u32>,
}

fn spec_from(args: &Args) -> Result<ExperimentSpec, CliError> {
    let mut spec = match &args.config {
        Some(path) => parse_config(path, args.command)?,
        None => parse_config_str("", args.command)?,
    };
    if let Some(seed) = args.seed {
        spec.set_seed(seed);
    }
    if let Some(order) = args.order {
        spec.set_order(order)?;
    }
    spec.workers = args.workers;
    spec.out_dir = resolve_out_dir(args.out.as_deref(), std::env::var("TP_OUT_DIR").ok().as_deref());
    Ok(spec)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let spec = match spec_from(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for w in &spec.warnings {
        eprintln!("warning: {w}");
    }
    match run(&spec) {
        Ok(manifest) => {
            for r in &manifest.runs {
                eprintln!("{} {}: {}", if r.ok { "ok" } else { "FAILED" }, r.name, r.message);
            }
            eprintln!("wrote {} files to {}", manifest.files.len() + 1, spec.out_dir.display());
            if manifest.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
