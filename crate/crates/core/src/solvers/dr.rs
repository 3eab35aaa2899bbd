use super::{diverged, relative_change, stopping_check, Algorithm, SolverConfig, SolverRun, TraceRow};
use crate::error::{invalid, Result};
use crate::frames::{Coefficient, Coefficients, TightFrame};
use crate::metrics::sdr;
use crate::proximal::{project_coeff_set_with_signal, soft_threshold_weighted, BoxSet};
use crate::quantizer::{QuantizedSignal, Signal};

/// Douglas–Rachford for the synthesis model.
pub fn solve_synthesis_dr<F: TightFrame>(
    q: &QuantizedSignal,
    frame: &F,
    cfg: &SolverConfig,
) -> Result<SolverRun<F::Coef>> {
    solve_synthesis_dr_with_reference(q, frame, cfg, None)
}

/// As [`solve_synthesis_dr`]; when `reference` (the unquantized original) is
/// given and tracing is enabled, trace rows carry SDR values.
///
/// Iterates `c̃ = P_Γ*(c)`, `c ← c + λ(soft_γ(2c̃ - c) - c̃)` from `c = A q`, and
/// returns `D` of the projection of the final iterate.
pub fn solve_synthesis_dr_with_reference<F: TightFrame>(
    q: &QuantizedSignal,
    frame: &F,
    cfg: &SolverConfig,
    reference: Option<&[f64]>,
) -> Result<SolverRun<F::Coef>> {
    if cfg.algorithm != Algorithm::DouglasRachford {
        return Err(invalid("Douglas–Rachford called with a Chambolle–Pock config"));
    }
    cfg.validate()?;
    let n = q.len();
    if let Some(r) = reference {
        if r.len() != n {
            return Err(invalid("reference length differs from quantized signal"));
        }
    }
    let bounds = BoxSet::from_quantized_padded(q, frame.signal_len())?;
    let mut padded = q.samples().to_vec();
    padded.resize(frame.signal_len(), 0.0);
    let weights = frame.l1_weights();
    let sdr_quantized = match reference {
        Some(r) => Some(sdr(r, q.samples())?),
        None => None,
    };

    let mut c = frame.analyze(&padded)?;
    let mut trace = Vec::new();
    let mut iterations = 0;
    let converged = loop {
        let projection = project_coeff_set_with_signal(&c, frame, &bounds)?;
        let c_proj = &projection.coefficients;
        let reflected: Vec<F::Coef> = c_proj
            .values
            .iter()
            .zip(&c.values)
            .map(|(p, z)| *p * 2.0 - *z)
            .collect();
        let shrunk = soft_threshold_weighted(&reflected, cfg.gamma, weights)?;

        let mut step_sq = 0.0;
        let mut norm_sq = 0.0;
        for ((z, s), p) in c.values.iter_mut().zip(&shrunk).zip(&c_proj.values) {
            let step = (*s - *p) * cfg.lambda_relax;
            norm_sq += z.real_dot(*z);
            step_sq += step.real_dot(step);
            *z = *z + step;
        }
        iterations += 1;
        let change = relative_change(step_sq.sqrt(), norm_sq.sqrt());
        if !change.is_finite() {
            return Err(diverged(iterations));
        }

        if cfg.trace_metrics {
            let estimate = &projection.signal[..n];
            let sdr_now = match reference {
                Some(r) => Some(sdr(r, estimate)?),
                None => None,
            };
            trace.push(TraceRow {
                iteration: iterations,
                l1_objective: frame.l1_norm(c_proj),
                linf_violation: projection.violation,
                sdr: sdr_now,
                delta_sdr: sdr_now.zip(sdr_quantized).map(|(a, b)| a - b),
            });
        }

        let decision = stopping_check(iterations, change, cfg);
        if decision.should_stop() {
            break decision == super::StopDecision::Converged;
        }
    };

    let last = project_coeff_set_with_signal(&c, frame, &bounds)?;
    finish(
        q,
        frame,
        last.coefficients,
        last.signal,
        iterations,
        converged,
        trace,
    )
}

fn finish<F: TightFrame>(
    q: &QuantizedSignal,
    frame: &F,
    coefficients: Coefficients<F::Coef>,
    mut signal: Vec<f64>,
    iterations_used: usize,
    converged: bool,
    trace: Vec<TraceRow>,
) -> Result<SolverRun<F::Coef>> {
    signal.truncate(q.len());
    Ok(SolverRun {
        restored: Signal::new(signal, q.sample_rate())?,
        l1_objective: frame.l1_norm(&coefficients),
        coefficients,
        iterations_used,
        converged,
        trace,
    })
}
