//! Quantizes a WAV file, restores it with one model and writes the result.
//!
//! ```bash
//! cargo run -p sparse-dequant --release --example dequantize -- crates/core/data/speech_b.wav 3 analysis dgt restored.wav
//! ```

use sparse_dequant::audio_io::{peak_normalize, read_wav, write_wav, BitDepth};
use sparse_dequant::frames::{FrameGeometry, FrameKind, FrameSpec, TightFrame};
use sparse_dequant::metrics::EvaluationReport;
use sparse_dequant::quantizer::{quantize, QuantizedSignal};
use sparse_dequant::solvers::{
    default_params, solve_analysis_cp, solve_synthesis_dr, Model, SolverConfig, SolverRun,
};

fn solve<F: TightFrame>(
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
    let args: Vec<String> = std::env::args().skip(1).collect();
    let path = args
        .first()
        .map(String::as_str)
        .unwrap_or("crates/core/data/speech_b.wav");
    let w: u32 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let model: Model = args
        .get(2)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(Model::Synthesis);
    let kind: FrameKind = args
        .get(3)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(FrameKind::Dgt);

    let x = peak_normalize(&read_wav(path)?.signal)?;
    let q = quantize(&x, w)?;
    let (restored, l1, iters) = match FrameSpec::for_signal(kind, x.len(), FrameGeometry::default())? {
        FrameSpec::Dgt(f) => solve(&q, &f, model).map(|r| (r.restored, r.l1_objective, r.iterations_used))?,
        FrameSpec::Wmdct(f) => {
            solve(&q, &f, model).map(|r| (r.restored, r.l1_objective, r.iterations_used))?
        }
    };
    let report = EvaluationReport::evaluate(x.samples(), &q, restored.samples(), l1)?;
    println!(
        "{model} {kind} w={w}: SDR {:.2} -> {:.2} dB (ΔSDR {:.2}), {iters} iterations, max violation {:.1e}",
        report.sdr_quantized, report.sdr_restored, report.delta_sdr, report.linf_violation
    );
    if let Some(out) = args.get(4) {
        write_wav(out, &restored, BitDepth::Float32)?;
        println!("wrote {out}");
    }
    Ok(())
}
