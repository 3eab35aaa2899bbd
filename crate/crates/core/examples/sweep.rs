//! Runs a small word-length sweep through the library API and prints the
//! summary table. The `dequant-bench` binary exposes the same harness.
//!
//! ```bash
//! cargo run -p sparse-dequant --release --example sweep -- crates/core/data sweep_out
//! ```

use sparse_dequant::bench::{format_summary, run_sweep, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let mut cfg = ExperimentConfig::default();
    cfg.apply("input", &args.next().unwrap_or_else(|| "crates/core/data".into()))?;
    cfg.apply("out", &args.next().unwrap_or_else(|| "sweep_out".into()))?;
    cfg.apply("bits", "2,4,6,8")?;
    cfg.apply("transform", "dgt")?;
    let report = run_sweep(&cfg)?;
    print!("{}", format_summary(&report.summary));
    for f in &report.failures {
        eprintln!("failed: {}: {}", f.file.display(), f.message);
    }
    Ok(())
}
