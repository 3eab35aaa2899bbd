//! ΔSDR of both models over both transforms for a range of word lengths.
//!
//! ```bash
//! cargo run -p sparse-dequant --release --example compare_transforms -- crates/core/data/speech_a.wav 2 8
//! ```

use std::time::Instant;

use sparse_dequant::audio_io::{peak_normalize, read_wav};
use sparse_dequant::frames::{FrameGeometry, FrameKind, FrameSpec, TightFrame};
use sparse_dequant::metrics::delta_sdr;
use sparse_dequant::quantizer::{quantize, QuantizedSignal};
use sparse_dequant::solvers::{
    default_params, solve_analysis_cp, solve_synthesis_dr, Model, SolverConfig, SolverRun,
};

fn run<F: TightFrame>(
    q: &QuantizedSignal,
    frame: &F,
    model: Model,
) -> sparse_dequant::Result<SolverRun<F::Coef>> {
    let p = default_params(model.algorithm(), frame.kind(), q.word_length())?.value;
    match model {
        Model::Synthesis => solve_synthesis_dr(q, frame, &SolverConfig::douglas_rachford(p)),
        Model::Analysis => solve_analysis_cp(q, frame, &SolverConfig::chambolle_pock(p)),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| "crates/core/data/speech_a.wav".into());
    let lo: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let hi: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(8);

    let x = peak_normalize(&read_wav(&path)?.signal)?;
    println!("{path}: {} samples @ {} Hz", x.len(), x.sample_rate());
    println!(
        "{:>3} {:>6} {:>10} {:>9} {:>6} {:>7}",
        "w", "frame", "model", "ΔSDR dB", "iters", "secs"
    );
    for w in lo..=hi {
        let q = quantize(&x, w)?;
        for kind in [FrameKind::Dgt, FrameKind::Wmdct] {
            let frame = FrameSpec::for_signal(kind, x.len(), FrameGeometry::default())?;
            for model in [Model::Synthesis, Model::Analysis] {
                let t = Instant::now();
                let (restored, iters) = match &frame {
                    FrameSpec::Dgt(f) => run(&q, f, model).map(|r| (r.restored, r.iterations_used))?,
                    FrameSpec::Wmdct(f) => run(&q, f, model).map(|r| (r.restored, r.iterations_used))?,
                };
                let gain = delta_sdr(x.samples(), q.samples(), restored.samples())?;
                println!(
                    "{w:>3} {kind:>6} {model:>10} {gain:>9.3} {iters:>6} {:>7.2}",
                    t.elapsed().as_secs_f64()
                );
            }
        }
    }
    Ok(())
}
