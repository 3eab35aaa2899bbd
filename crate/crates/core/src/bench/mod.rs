//! Experiment harness: word-length sweeps over files, transforms and models.
//!
//! Every (file, word length, transform, model) cell runs independently; a
//! failing cell is reported and skipped without affecting the others. Rows
//! come back in grid order regardless of the number of worker threads.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

pub use config::{parse_word_lengths, ExperimentConfig};

use crate::audio_io::{peak_normalize, read_wav, write_wav, BitDepth};
use crate::error::{Error, Result};
use crate::frames::{FrameKind, FrameSpec, TightFrame};
use crate::metrics::EvaluationReport;
use crate::quantizer::{quantize, QuantizedSignal, Signal};
use crate::solvers::{
    default_params, solve_analysis_cp_with_reference, solve_synthesis_dr_with_reference, Algorithm, Model,
    SolverConfig, SolverRun, TraceRow,
};

/// First line of `results.csv`.
pub const RESULTS_SCHEMA: &str = "# sparse-dequant results v1";
/// First line of `summary.csv`.
pub const SUMMARY_SCHEMA: &str = "# sparse-dequant summary v1";
/// First line of every trace CSV.
pub const TRACE_SCHEMA: &str = "# sparse-dequant trace v1";

/// One point of the experiment grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub word_length: u32,
    pub transform: FrameKind,
    pub model: Model,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    /// File stem of the input.
    pub file: String,
    pub word_length: u32,
    pub transform: FrameKind,
    pub model: Model,
    pub iterations_used: usize,
    pub sdr_quantized: f64,
    pub sdr_restored: f64,
    pub delta_sdr: f64,
    pub l1_objective: f64,
    pub linf_violation: f64,
    /// Seconds spent in the solver.
    pub wall_time: f64,
}

impl ResultRow {
    pub fn cell(&self) -> Cell {
        Cell {
            word_length: self.word_length,
            transform: self.transform,
            model: self.model,
        }
    }
}

/// Output of [`run_single`].
#[derive(Debug, Clone)]
pub struct SingleRun {
    pub row: ResultRow,
    pub restored: Signal,
    pub trace: Vec<TraceRow>,
}

/// A cell that could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub file: PathBuf,
    pub cell: Cell,
    pub message: String,
}

/// Aggregate over all files for one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub cell: Cell,
    pub count: usize,
    pub mean_delta_sdr: f64,
    /// Sample standard deviation; zero for a single file.
    pub std_delta_sdr: f64,
    pub mean_sdr_quantized: f64,
    pub mean_sdr_restored: f64,
    pub mean_iterations: f64,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<ResultRow>,
    pub summary: Vec<SummaryRow>,
    pub failures: Vec<Failure>,
    pub results_path: PathBuf,
    pub summary_path: PathBuf,
}

fn file_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into())
}

fn solver_config(cfg: &ExperimentConfig, cell: Cell) -> Result<SolverConfig> {
    let algorithm = cell.model.algorithm();
    let value = match (algorithm, cfg.gamma, cfg.zeta) {
        (Algorithm::DouglasRachford, Some(g), _) => g,
        (Algorithm::ChambollePock, _, Some(z)) => z,
        _ => default_params(algorithm, cell.transform, cell.word_length)?.value,
    };
    let solver = match algorithm {
        Algorithm::DouglasRachford => SolverConfig::douglas_rachford(value),
        Algorithm::ChambollePock => SolverConfig::chambolle_pock(value),
    };
    Ok(solver
        .with_iterations(cfg.min_iter, cfg.max_iter)
        .with_trace(cfg.emit_trace))
}

fn solve<F: TightFrame>(
    q: &QuantizedSignal,
    frame: &F,
    model: Model,
    solver: &SolverConfig,
    reference: &[f64],
) -> Result<SolverRun<F::Coef>> {
    match model {
        Model::Synthesis => solve_synthesis_dr_with_reference(q, frame, solver, Some(reference)),
        Model::Analysis => solve_analysis_cp_with_reference(q, frame, solver, Some(reference)),
    }
}

fn finish<C>(
    run: SolverRun<C>,
    file: String,
    cell: Cell,
    x: &Signal,
    q: &QuantizedSignal,
    wall_time: f64,
) -> Result<SingleRun> {
    let report = EvaluationReport::evaluate(x.samples(), q, run.restored.samples(), run.l1_objective)?;
    Ok(SingleRun {
        row: ResultRow {
            file,
            word_length: cell.word_length,
            transform: cell.transform,
            model: cell.model,
            iterations_used: run.iterations_used,
            sdr_quantized: report.sdr_quantized,
            sdr_restored: report.sdr_restored,
            delta_sdr: report.delta_sdr,
            l1_objective: report.l1_objective,
            linf_violation: report.linf_violation,
            wall_time,
        },
        restored: run.restored,
        trace: run.trace,
    })
}

fn output_stem(cfg: &ExperimentConfig, file: &str, cell: Cell) -> PathBuf {
    cfg.out_dir.join(format!(
        "{file}_w{}_{}_{}",
        cell.word_length, cell.transform, cell.model
    ))
}

/// Runs one grid cell on one file: read, peak-normalize, quantize, solve on a
/// padded frame, evaluate, and optionally write the restored audio and trace
/// into `cfg.out_dir`.
pub fn run_single(input: &Path, cell: Cell, cfg: &ExperimentConfig) -> Result<SingleRun> {
    let audio = read_wav(input)?;
    if let Some(rate) = cfg.sample_rate {
        if audio.signal.sample_rate() != rate {
            return Err(Error::UnsupportedFormat(format!(
                "{}: sample rate {} Hz, expected {rate} Hz",
                input.display(),
                audio.signal.sample_rate()
            )));
        }
    }
    let x = peak_normalize(&audio.signal)?;
    let q = quantize(&x, cell.word_length)?;
    let solver = solver_config(cfg, cell)?;
    let frame = FrameSpec::for_signal(cell.transform, x.len(), cfg.geometry)?;
    let file = file_id(input);

    let start = Instant::now();
    let out = match &frame {
        FrameSpec::Dgt(f) => {
            let run = solve(&q, f, cell.model, &solver, x.samples())?;
            finish(run, file, cell, &x, &q, start.elapsed().as_secs_f64())?
        }
        FrameSpec::Wmdct(f) => {
            let run = solve(&q, f, cell.model, &solver, x.samples())?;
            finish(run, file, cell, &x, &q, start.elapsed().as_secs_f64())?
        }
    };

    if cfg.emit_audio || cfg.emit_trace {
        std::fs::create_dir_all(&cfg.out_dir)?;
        let stem = output_stem(cfg, &out.row.file, cell);
        if cfg.emit_audio {
            let mut path = stem.clone().into_os_string();
            path.push("_restored.wav");
            write_wav(PathBuf::from(path), &out.restored, BitDepth::Float32)?;
        }
        if cfg.emit_trace {
            let mut path = stem.into_os_string();
            path.push("_trace.csv");
            write_trace(&out.trace, Path::new(&path))?;
        }
    }
    Ok(out)
}

/// Writes the per-iteration trace of a solver run as CSV.
///
/// Fails with [`Error::TraceDisabled`] when the run was made without
/// `trace_metrics`.
pub fn emit_trace<C>(run: &SolverRun<C>, path: &Path) -> Result<()> {
    write_trace(&run.trace, path)
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn write_trace(trace: &[TraceRow], path: &Path) -> Result<()> {
    if trace.is_empty() {
        return Err(Error::TraceDisabled);
    }
    let mut text = format!("{TRACE_SCHEMA}\n");
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["iteration", "l1_objective", "linf_violation", "sdr", "delta_sdr"])?;
    for r in trace {
        w.write_record([
            r.iteration.to_string(),
            r.l1_objective.to_string(),
            r.linf_violation.to_string(),
            opt(r.sdr),
            opt(r.delta_sdr),
        ])?;
    }
    text.push_str(&csv_text(w)?);
    std::fs::write(path, text)?;
    Ok(())
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Runs the whole grid. Configuration problems are returned as errors;
/// failures of individual cells are collected in the report.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let files = cfg.input_files()?;
    for w in cfg.word_lengths.iter().filter(|w| **w > 8) {
        log::warn!("w = {w} has no tabulated parameters; using extrapolated values");
    }

    let mut tasks = Vec::new();
    for file in &files {
        for &word_length in &cfg.word_lengths {
            for &transform in &cfg.transforms {
                for &model in &cfg.models {
                    tasks.push((
                        file.clone(),
                        Cell {
                            word_length,
                            transform,
                            model,
                        },
                    ));
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let outcomes: Vec<_> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(file, cell)| {
                log::info!(
                    "{} w={} {} {}",
                    file.display(),
                    cell.word_length,
                    cell.transform,
                    cell.model
                );
                run_single(file, *cell, cfg)
            })
            .collect()
    });

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for ((file, cell), outcome) in tasks.into_iter().zip(outcomes) {
        match outcome {
            Ok(run) => rows.push(run.row),
            Err(e) => {
                log::error!("{}: {e}", file.display());
                failures.push(Failure {
                    file,
                    cell,
                    message: e.to_string(),
                });
            }
        }
    }

    let summary = summarize(&rows);
    std::fs::create_dir_all(&cfg.out_dir)?;
    let results_path = cfg.out_dir.join("results.csv");
    let summary_path = cfg.out_dir.join("summary.csv");
    std::fs::write(&results_path, results_csv(&rows)?)?;
    std::fs::write(&summary_path, summary_csv(&summary)?)?;
    Ok(SweepReport {
        rows,
        summary,
        failures,
        results_path,
        summary_path,
    })
}

/// Mean and spread of ΔSDR per cell, sorted by cell.
pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryRow> {
    let mut cells: Vec<Cell> = rows.iter().map(ResultRow::cell).collect();
    cells.sort_unstable();
    cells.dedup();
    cells
        .into_iter()
        .map(|cell| {
            let group: Vec<&ResultRow> = rows.iter().filter(|r| r.cell() == cell).collect();
            let n = group.len() as f64;
            let mean = |f: fn(&ResultRow) -> f64| group.iter().map(|r| f(r)).sum::<f64>() / n;
            let mean_delta_sdr = mean(|r| r.delta_sdr);
            let std_delta_sdr = if group.len() > 1 {
                let ss: f64 = group.iter().map(|r| (r.delta_sdr - mean_delta_sdr).powi(2)).sum();
                (ss / (n - 1.0)).sqrt()
            } else {
                0.0
            };
            SummaryRow {
                cell,
                count: group.len(),
                mean_delta_sdr,
                std_delta_sdr,
                mean_sdr_quantized: mean(|r| r.sdr_quantized),
                mean_sdr_restored: mean(|r| r.sdr_restored),
                mean_iterations: mean(|r| r.iterations_used as f64),
            }
        })
        .collect()
}

pub fn results_csv(rows: &[ResultRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "file",
        "word_length",
        "transform",
        "model",
        "iterations_used",
        "sdr_quantized",
        "sdr_restored",
        "delta_sdr",
        "l1_objective",
        "linf_violation",
        "wall_time",
    ])?;
    for r in rows {
        w.write_record([
            r.file.clone(),
            r.word_length.to_string(),
            r.transform.to_string(),
            r.model.to_string(),
            r.iterations_used.to_string(),
            r.sdr_quantized.to_string(),
            r.sdr_restored.to_string(),
            r.delta_sdr.to_string(),
            r.l1_objective.to_string(),
            r.linf_violation.to_string(),
            format!("{:.6}", r.wall_time),
        ])?;
    }
    Ok(format!("{RESULTS_SCHEMA}\n{}", csv_text(w)?))
}

pub fn summary_csv(summary: &[SummaryRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "word_length",
        "transform",
        "model",
        "files",
        "mean_delta_sdr",
        "std_delta_sdr",
        "mean_sdr_quantized",
        "mean_sdr_restored",
        "mean_iterations",
    ])?;
    for s in summary {
        w.write_record([
            s.cell.word_length.to_string(),
            s.cell.transform.to_string(),
            s.cell.model.to_string(),
            s.count.to_string(),
            s.mean_delta_sdr.to_string(),
            s.std_delta_sdr.to_string(),
            s.mean_sdr_quantized.to_string(),
            s.mean_sdr_restored.to_string(),
            s.mean_iterations.to_string(),
        ])?;
    }
    Ok(format!("{SUMMARY_SCHEMA}\n{}", csv_text(w)?))
}

/// Fixed-width table of the summary for terminal output.
pub fn format_summary(summary: &[SummaryRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>3}  {:<6} {:<10} {:>5} {:>10} {:>8} {:>9} {:>7}",
        "w", "frame", "model", "files", "ΔSDR [dB]", "std", "SDR(q)", "iters"
    );
    for s in summary {
        let _ = writeln!(
            out,
            "{:>3}  {:<6} {:<10} {:>5} {:>10.3} {:>8.3} {:>9.3} {:>7.1}",
            s.cell.word_length,
            s.cell.transform.as_str(),
            s.cell.model.as_str(),
            s.count,
            s.mean_delta_sdr,
            s.std_delta_sdr,
            s.mean_sdr_quantized,
            s.mean_iterations
        );
    }
    out
}
