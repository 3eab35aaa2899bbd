//! Per-iteration ΔSDR and ℓ1 objective for one clip, both models, DGT.
//!
//! ```bash
//! cargo run -p sparse-dequant --release --example trace_iterations -- crates/core/data/speech_a.wav 2 trace_dir
//! ```
//!
//! Prints every tenth trace row and, when an output directory is given, writes
//! the full traces as CSV.

use std::path::PathBuf;

use sparse_dequant::audio_io::{peak_normalize, read_wav};
use sparse_dequant::bench::emit_trace;
use sparse_dequant::frames::{DgtFrame, FrameGeometry, TightFrame};
use sparse_dequant::quantizer::quantize;
use sparse_dequant::solvers::{
    default_params, solve_analysis_cp_with_reference, solve_synthesis_dr_with_reference, Algorithm,
    SolverConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| "crates/core/data/speech_a.wav".into());
    let w: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let out = args.next().map(PathBuf::from);

    let x = peak_normalize(&read_wav(&path)?.signal)?;
    let q = quantize(&x, w)?;
    let frame = DgtFrame::for_signal(x.len(), FrameGeometry::default())?;

    let gamma = default_params(Algorithm::DouglasRachford, frame.kind(), w)?.value;
    let zeta = default_params(Algorithm::ChambollePock, frame.kind(), w)?.value;
    let dr = solve_synthesis_dr_with_reference(
        &q,
        &frame,
        &SolverConfig::douglas_rachford(gamma).with_trace(true),
        Some(x.samples()),
    )?;
    let cp = solve_analysis_cp_with_reference(
        &q,
        &frame,
        &SolverConfig::chambolle_pock(zeta).with_trace(true),
        Some(x.samples()),
    )?;

    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>12}",
        "iter", "DR ΔSDR", "DR ℓ1", "CP ΔSDR", "CP ℓ1"
    );
    for (a, b) in dr.trace.iter().zip(&cp.trace) {
        if a.iteration == 1 || a.iteration % 10 == 0 {
            println!(
                "{:>5} {:>12.4} {:>12.3} {:>12.4} {:>12.3}",
                a.iteration,
                a.delta_sdr.unwrap_or(f64::NAN),
                a.l1_objective,
                b.delta_sdr.unwrap_or(f64::NAN),
                b.l1_objective
            );
        }
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(&dir)?;
        emit_trace(&dr, &dir.join(format!("w{w}_dgt_synthesis_trace.csv")))?;
        emit_trace(&cp, &dir.join(format!("w{w}_dgt_analysis_trace.csv")))?;
    }
    Ok(())
}
