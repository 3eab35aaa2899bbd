use std::sync::Once;

use super::{
    diverged, relative_change, stopping_check, Algorithm, SolverConfig, SolverRun, StopDecision, TraceRow,
};
use crate::error::{invalid, Result};
use crate::frames::{Coefficient, Coefficients, TightFrame};
use crate::metrics::sdr;
use crate::proximal::{clip_magnitude_weighted, project_time_box, BoxSet};
use crate::quantizer::{QuantizedSignal, Signal};

static STEP_WARNING: Once = Once::new();

/// Chambolle–Pock for the analysis model.
pub fn solve_analysis_cp<F: TightFrame>(
    q: &QuantizedSignal,
    frame: &F,
    cfg: &SolverConfig,
) -> Result<SolverRun<F::Coef>> {
    solve_analysis_cp_with_reference(q, frame, cfg, None)
}

/// As [`solve_analysis_cp`], with SDR tracing against `reference`.
///
/// Iterates
/// `y ← clip(y + σ A p̄)`, `p⁺ = P_Γ(p - ζ D y)`, `p̄ = p⁺ + ρ(p⁺ - p)`
/// from `p = p̄ = q`, `y = 0`. The dual clip radius follows the ℓ1 weights of
/// the frame. The returned signal is the final primal iterate, which lies in
/// `Γ` by construction.
pub fn solve_analysis_cp_with_reference<F: TightFrame>(
    q: &QuantizedSignal,
    frame: &F,
    cfg: &SolverConfig,
    reference: Option<&[f64]>,
) -> Result<SolverRun<F::Coef>> {
    if cfg.algorithm != Algorithm::ChambollePock {
        return Err(invalid("Chambolle–Pock called with a Douglas–Rachford config"));
    }
    cfg.validate()?;
    let n = q.len();
    if let Some(r) = reference {
        if r.len() != n {
            return Err(invalid("reference length differs from quantized signal"));
        }
    }
    if cfg.rho == 1.0 && !cfg.cp_step_condition_holds(frame.operator_norm()) {
        STEP_WARNING.call_once(|| {
            log::warn!(
                "Chambolle–Pock steps give ζσ‖A‖² = {} ≥ 1; convergence is not guaranteed",
                cfg.zeta * cfg.sigma
            )
        });
    }
    let bounds = BoxSet::from_quantized_padded(q, frame.signal_len())?;
    let weights = frame.l1_weights();
    let sdr_quantized = match reference {
        Some(r) => Some(sdr(r, q.samples())?),
        None => None,
    };

    let mut primal = q.samples().to_vec();
    primal.resize(frame.signal_len(), 0.0);
    let mut extrapolated = primal.clone();
    let mut dual: Coefficients<F::Coef> = Coefficients::zeros(frame.grid());
    let mut trace = Vec::new();
    let mut iterations = 0;

    let converged = loop {
        let analyzed = frame.analyze(&extrapolated)?;
        let ascent: Vec<F::Coef> = dual
            .values
            .iter()
            .zip(&analyzed.values)
            .map(|(y, a)| *y + *a * cfg.sigma)
            .collect();
        dual.values = clip_magnitude_weighted(&ascent, 1.0, weights)?;

        let back = frame.synthesize(&dual)?;
        let descent: Vec<f64> = primal.iter().zip(&back).map(|(p, d)| p - cfg.zeta * d).collect();
        let next = project_time_box(&descent, &bounds)?;

        let mut step_sq = 0.0;
        let mut norm_sq = 0.0;
        for ((bar, p_new), p_old) in extrapolated.iter_mut().zip(&next).zip(&primal) {
            let step = p_new - p_old;
            step_sq += step * step;
            norm_sq += p_old * p_old;
            *bar = p_new + cfg.rho * step;
        }
        primal = next;
        iterations += 1;
        let change = relative_change(step_sq.sqrt(), norm_sq.sqrt());
        if !change.is_finite() || dual.values.iter().any(|v| !v.is_finite()) {
            return Err(diverged(iterations));
        }

        if cfg.trace_metrics {
            let estimate = &primal[..n];
            let sdr_now = match reference {
                Some(r) => Some(sdr(r, estimate)?),
                None => None,
            };
            trace.push(TraceRow {
                iteration: iterations,
                l1_objective: frame.l1_norm(&frame.analyze(&primal)?),
                linf_violation: bounds.violation(&extrapolated),
                sdr: sdr_now,
                delta_sdr: sdr_now.zip(sdr_quantized).map(|(a, b)| a - b),
            });
        }

        let decision = stopping_check(iterations, change, cfg);
        if decision.should_stop() {
            break decision == StopDecision::Converged;
        }
    };

    let mut restored = project_time_box(&primal, &bounds)?;
    let coefficients = frame.analyze(&restored)?;
    let l1_objective = frame.l1_norm(&coefficients);
    restored.truncate(n);
    Ok(SolverRun {
        restored: Signal::new(restored, q.sample_rate())?,
        coefficients,
        l1_objective,
        iterations_used: iterations,
        converged,
        trace,
    })
}
