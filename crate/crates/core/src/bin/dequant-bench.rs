//! Word-length sweep over WAV files.
//!
//! Exit status: 0 when every cell succeeded, 1 when any cell failed, 2 on a
//! configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sparse_dequant::bench::{format_summary, run_sweep, ExperimentConfig};
use sparse_dequant::Error;

#[derive(Debug, Parser)]
#[command(
    name = "dequant-bench",
    version,
    about = "Restore quantized audio over a grid of word lengths, transforms and models"
)]
struct Args {
    /// WAV files or directories of WAV files.
    #[arg(long, num_args = 1..)]
    input: Vec<PathBuf>,
    /// Output directory for results.csv, summary.csv and optional artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Word lengths, e.g. `2-8` or `2,4,6`.
    #[arg(long)]
    bits: Option<String>,
    /// dgt, wmdct or both.
    #[arg(long)]
    transform: Option<String>,
    /// synthesis, analysis or both.
    #[arg(long)]
    model: Option<String>,
    /// Threshold for the synthesis model; replaces the tabulated value.
    #[arg(long)]
    gamma: Option<f64>,
    /// Primal step for the analysis model; replaces the tabulated value.
    #[arg(long)]
    zeta: Option<f64>,
    /// Iteration cap [default: 400].
    #[arg(long)]
    max_iter: Option<usize>,
    /// Iterations before the stagnation test applies [default: 50].
    #[arg(long)]
    min_iter: Option<usize>,
    /// Write a per-iteration trace CSV for every cell.
    #[arg(long)]
    trace: bool,
    /// Write every restored signal as WAV.
    #[arg(long)]
    emit_audio: bool,
    /// Worker threads [default: 1].
    #[arg(long)]
    jobs: Option<usize>,
    /// `key = value` file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(args: &Args) -> sparse_dequant::Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &args.config {
        cfg.apply_file(path)?;
    }
    if !args.input.is_empty() {
        cfg.inputs = args.input.clone();
    }
    if let Some(out) = &args.out {
        cfg.out_dir = out.clone();
    }
    let flags = [
        ("bits", args.bits.clone()),
        ("transform", args.transform.clone()),
        ("model", args.model.clone()),
        ("gamma", args.gamma.map(|v| v.to_string())),
        ("zeta", args.zeta.map(|v| v.to_string())),
        ("max_iter", args.max_iter.map(|v| v.to_string())),
        ("min_iter", args.min_iter.map(|v| v.to_string())),
        ("jobs", args.jobs.map(|v| v.to_string())),
    ];
    for (key, value) in flags {
        if let Some(value) = value {
            cfg.apply(key, &value)?;
        }
    }
    cfg.emit_trace |= args.trace;
    cfg.emit_audio |= args.emit_audio;
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let cfg = match build_config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run_sweep(&cfg) {
        Ok(report) => {
            print!("{}", format_summary(&report.summary));
            println!(
                "wrote {} and {}",
                report.results_path.display(),
                report.summary_path.display()
            );
            for f in &report.failures {
                eprintln!(
                    "failed: {} w={} {} {}: {}",
                    f.file.display(),
                    f.cell.word_length,
                    f.cell.transform,
                    f.cell.model,
                    f.message
                );
            }
            if report.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
