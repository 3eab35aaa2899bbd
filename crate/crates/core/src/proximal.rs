//! Proximal maps and projections shared by both solvers.

use crate::error::{invalid, Result};
use crate::frames::{Coefficient, Coefficients, TightFrame};
use crate::quantizer::QuantizedSignal;

/// Closed per-sample interval constraint `lower_n ≤ x_n ≤ upper_n`.
///
/// Built from a quantized signal it is the feasible set `{x : ‖x - q‖∞ ≤ Δ/2}`.
/// Zero-padding appended by the solvers is pinned with `lower = upper = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSet {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxSet {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(invalid("box bounds differ in length"));
        }
        if lower
            .iter()
            .zip(&upper)
            .any(|(l, u)| l.is_nan() || u.is_nan() || l > u)
        {
            return Err(invalid("box lower bound exceeds upper bound"));
        }
        Ok(Self { lower, upper })
    }

    pub fn from_quantized(q: &QuantizedSignal) -> Self {
        let half = q.delta() / 2.0;
        Self {
            lower: q.samples().iter().map(|s| s - half).collect(),
            upper: q.samples().iter().map(|s| s + half).collect(),
        }
    }

    /// The box of `q` extended with zero-width intervals at 0 up to `len`.
    pub fn from_quantized_padded(q: &QuantizedSignal, len: usize) -> Result<Self> {
        if len < q.len() {
            return Err(invalid(format!(
                "padded length {len} is shorter than the signal ({})",
                q.len()
            )));
        }
        let mut b = Self::from_quantized(q);
        b.lower.resize(len, 0.0);
        b.upper.resize(len, 0.0);
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Largest amount by which `y` leaves the box (0 when inside).
    pub fn violation(&self, y: &[f64]) -> f64 {
        y.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(v, (l, u))| (l - v).max(v - u).max(0.0))
            .fold(0.0, f64::max)
    }
}

fn check_threshold(gamma: f64) -> Result<()> {
    if gamma < 0.0 || !gamma.is_finite() {
        return Err(invalid(format!(
            "threshold must be finite and non-negative, got {gamma}"
        )));
    }
    Ok(())
}

fn check_radius(lambda: f64) -> Result<()> {
    if lambda <= 0.0 || !lambda.is_finite() {
        return Err(invalid(format!(
            "clip radius must be finite and positive, got {lambda}"
        )));
    }
    Ok(())
}

fn check_weights(n: usize, weights: &[f64]) -> Result<()> {
    if weights.len() != n {
        return Err(invalid(format!("{} weights for {n} coefficients", weights.len())));
    }
    Ok(())
}

/// Elementwise soft thresholding, the prox of `γ‖·‖₁`.
pub fn soft_threshold<C: Coefficient>(c: &[C], gamma: f64) -> Result<Vec<C>> {
    check_threshold(gamma)?;
    Ok(c.iter().map(|z| z.soft(gamma)).collect())
}

/// Soft thresholding with per-entry thresholds `γ·w_k`, the prox of the
/// weighted norm `γ Σ w_k |c_k|`.
pub fn soft_threshold_weighted<C: Coefficient>(c: &[C], gamma: f64, weights: &[f64]) -> Result<Vec<C>> {
    check_threshold(gamma)?;
    check_weights(c.len(), weights)?;
    Ok(c.iter().zip(weights).map(|(z, w)| z.soft(gamma * w)).collect())
}

/// Elementwise projection onto the ℓ∞ ball of radius `λ`.
pub fn clip_magnitude<C: Coefficient>(c: &[C], lambda: f64) -> Result<Vec<C>> {
    check_radius(lambda)?;
    Ok(c.iter().map(|z| z.clip(lambda)).collect())
}

/// Projection onto `{c : |c_k| ≤ λ·w_k}`, the dual ball of the weighted ℓ1 norm.
pub fn clip_magnitude_weighted<C: Coefficient>(c: &[C], lambda: f64, weights: &[f64]) -> Result<Vec<C>> {
    check_radius(lambda)?;
    check_weights(c.len(), weights)?;
    Ok(c.iter().zip(weights).map(|(z, w)| z.clip(lambda * w)).collect())
}

/// Euclidean projection onto the box: values outside snap to the nearest bound.
pub fn project_time_box(y: &[f64], bounds: &BoxSet) -> Result<Vec<f64>> {
    if y.len() != bounds.len() {
        return Err(invalid(format!(
            "signal of length {} projected onto box of length {}",
            y.len(),
            bounds.len()
        )));
    }
    Ok(y.iter()
        .zip(bounds.lower.iter().zip(&bounds.upper))
        .map(|(&v, (&l, &u))| v.clamp(l, u))
        .collect())
}

/// Projection onto `{c : D c ∈ box}` for a Parseval-tight frame:
/// `z - A(D z - P(D z))`, with `P` the time-domain box projection.
pub fn project_coeff_set<F: TightFrame>(
    z: &Coefficients<F::Coef>,
    frame: &F,
    bounds: &BoxSet,
) -> Result<Coefficients<F::Coef>> {
    Ok(project_coeff_set_with_signal(z, frame, bounds)?.coefficients)
}

pub(crate) struct CoeffProjection<C> {
    pub coefficients: Coefficients<C>,
    /// `P(D z)`, equal to `D` of the projected coefficients.
    pub signal: Vec<f64>,
    /// Box violation of `D z` before projection.
    pub violation: f64,
}

pub(crate) fn project_coeff_set_with_signal<F: TightFrame>(
    z: &Coefficients<F::Coef>,
    frame: &F,
    bounds: &BoxSet,
) -> Result<CoeffProjection<F::Coef>> {
    if bounds.len() != frame.signal_len() {
        return Err(invalid(format!(
            "box of length {} does not match frame signal length {}",
            bounds.len(),
            frame.signal_len()
        )));
    }
    let synth = frame.synthesize(z)?;
    let projected = project_time_box(&synth, bounds)?;
    let residual: Vec<f64> = synth.iter().zip(&projected).map(|(s, p)| s - p).collect();
    let correction = frame.analyze(&residual)?;
    let values = z
        .values
        .iter()
        .zip(&correction.values)
        .map(|(a, b)| *a - *b)
        .collect();
    Ok(CoeffProjection {
        coefficients: Coefficients { values, grid: z.grid },
        violation: bounds.violation(&synth),
        signal: projected,
    })
}
