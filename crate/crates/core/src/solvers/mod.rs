//! Iterative dequantization solvers.
//!
//! - [`solve_synthesis_dr`]: Douglas–Rachford on `min ‖c‖₁ s.t. D c ∈ Γ`.
//! - [`solve_analysis_cp`]: Chambolle–Pock on `min ‖A x‖₁ s.t. x ∈ Γ`.
//!
//! `Γ` is the closed box of half-width `Δ/2` around the quantized samples. Both
//! solvers pad the signal to the frame length (padding pinned to zero), return
//! a restoration projected onto `Γ`, and strip the padding.

mod cp;
mod dr;
mod params;

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::frames::Coefficients;
use crate::quantizer::Signal;

pub use cp::{solve_analysis_cp, solve_analysis_cp_with_reference};
pub use dr::{solve_synthesis_dr, solve_synthesis_dr_with_reference};
pub use params::{default_params, ParamChoice};

pub const DEFAULT_MAX_ITER: usize = 400;
pub const DEFAULT_MIN_ITER: usize = 50;
/// Relative iterate change below which a run counts as stagnated.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    DouglasRachford,
    ChambollePock,
}

/// Signal model; each is solved by one algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    Synthesis,
    Analysis,
}

impl Model {
    pub fn algorithm(self) -> Algorithm {
        match self {
            Model::Synthesis => Algorithm::DouglasRachford,
            Model::Analysis => Algorithm::ChambollePock,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Synthesis => "synthesis",
            Model::Analysis => "analysis",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "synthesis" | "syn" | "sparse" => Ok(Model::Synthesis),
            "analysis" | "ana" | "cosparse" => Ok(Model::Analysis),
            other => Err(invalid(format!("unknown model '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// DR soft threshold.
    pub gamma: f64,
    /// DR relaxation, in `(0, 2]`.
    pub lambda_relax: f64,
    /// CP primal step.
    pub zeta: f64,
    /// CP dual step.
    pub sigma: f64,
    /// CP extrapolation, in `[0, 1]`.
    pub rho: f64,
    pub max_iter: usize,
    pub min_iter: usize,
    pub tolerance: f64,
    pub trace_metrics: bool,
}

impl SolverConfig {
    pub fn douglas_rachford(gamma: f64) -> Self {
        Self {
            algorithm: Algorithm::DouglasRachford,
            gamma,
            lambda_relax: 1.0,
            zeta: 1.0,
            sigma: 1.0,
            rho: 1.0,
            max_iter: DEFAULT_MAX_ITER,
            min_iter: DEFAULT_MIN_ITER,
            tolerance: DEFAULT_TOLERANCE,
            trace_metrics: false,
        }
    }

    /// `σ = 1/ζ`, `ρ = 1`.
    pub fn chambolle_pock(zeta: f64) -> Self {
        Self {
            algorithm: Algorithm::ChambollePock,
            zeta,
            sigma: 1.0 / zeta,
            ..Self::douglas_rachford(1.0)
        }
    }

    pub fn with_iterations(mut self, min_iter: usize, max_iter: usize) -> Self {
        self.min_iter = min_iter;
        self.max_iter = max_iter;
        self
    }

    pub fn with_trace(mut self, enabled: bool) -> Self {
        self.trace_metrics = enabled;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(invalid(format!("{name} must be finite and positive, got {v}")))
            }
        };
        match self.algorithm {
            Algorithm::DouglasRachford => {
                positive("gamma", self.gamma)?;
                if !(self.lambda_relax > 0.0 && self.lambda_relax <= 2.0) {
                    return Err(invalid(format!(
                        "relaxation must lie in (0, 2], got {}",
                        self.lambda_relax
                    )));
                }
            }
            Algorithm::ChambollePock => {
                positive("zeta", self.zeta)?;
                positive("sigma", self.sigma)?;
                if !(0.0..=1.0).contains(&self.rho) {
                    return Err(invalid(format!("rho must lie in [0, 1], got {}", self.rho)));
                }
            }
        }
        if self.max_iter == 0 {
            return Err(invalid("max_iter must be at least 1"));
        }
        if self.min_iter > self.max_iter {
            return Err(invalid(format!(
                "min_iter {} exceeds max_iter {}",
                self.min_iter, self.max_iter
            )));
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return Err(invalid("tolerance must be non-negative"));
        }
        Ok(())
    }

    /// `ζ σ ‖A‖² < 1`, the sufficient convergence condition of CP with `ρ = 1`.
    pub fn cp_step_condition_holds(&self, operator_norm: f64) -> bool {
        self.zeta * self.sigma * operator_norm * operator_norm < 1.0
    }
}

/// One row of the per-iteration trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    /// 1-based.
    pub iteration: usize,
    /// Weighted ℓ1 norm of the current consistent estimate's coefficients.
    pub l1_objective: f64,
    /// Box violation of the unprojected iterate (DR: `D c`; CP: extrapolated
    /// primal `p̄`). The returned estimate itself is always consistent.
    pub linf_violation: f64,
    /// SDR of the current consistent estimate against the reference.
    pub sdr: Option<f64>,
    pub delta_sdr: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SolverRun<C> {
    /// Consistent estimate on the original (unpadded) support.
    pub restored: Signal,
    /// Final coefficients on the padded frame: the projected DR iterate, or
    /// `A x̂` for CP.
    pub coefficients: Coefficients<C>,
    pub l1_objective: f64,
    pub iterations_used: usize,
    /// True when the run stopped on the stagnation tolerance rather than
    /// `max_iter`.
    pub converged: bool,
    pub trace: Vec<TraceRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopDecision {
    Continue,
    Converged,
    MaxIterations,
}

impl StopDecision {
    pub fn should_stop(self) -> bool {
        self != StopDecision::Continue
    }
}

/// Decision after `iterations_done` completed iterations whose last step
/// changed the iterate by `relative_change`.
pub fn stopping_check(iterations_done: usize, relative_change: f64, cfg: &SolverConfig) -> StopDecision {
    if iterations_done >= cfg.max_iter {
        StopDecision::MaxIterations
    } else if iterations_done < cfg.min_iter {
        StopDecision::Continue
    } else if relative_change < cfg.tolerance {
        StopDecision::Converged
    } else {
        StopDecision::Continue
    }
}

pub(crate) fn relative_change(delta_norm: f64, reference_norm: f64) -> f64 {
    if reference_norm > 0.0 {
        delta_norm / reference_norm
    } else {
        delta_norm
    }
}

pub(crate) fn diverged(iteration: usize) -> Error {
    Error::NumericalFailure(format!("iterate became non-finite at iteration {iteration}"))
}
