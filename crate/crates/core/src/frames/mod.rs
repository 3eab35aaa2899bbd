//! Parseval-tight time-frequency frames.
//!
//! Every frame here satisfies `D A = I` and `‖A x‖₂ = ‖x‖₂`, where `A` is the
//! analysis operator and the synthesis operator `D` is its adjoint with respect
//! to the real inner product `Re⟨·,·⟩`. Signals are treated as periodic over
//! the frame's `signal_len`.

mod dgt;
mod wmdct;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

pub use rustfft::num_complex::Complex64;

use crate::error::{invalid, Error, Result};

pub use dgt::DgtFrame;
pub use wmdct::WmdctFrame;

/// Scalar type of a frame's coefficient domain.
pub trait Coefficient:
    Copy
    + Default
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
{
    fn modulus(self) -> f64;

    /// `Re(conj(self) · other)`.
    fn real_dot(self, other: Self) -> f64;

    fn is_finite(self) -> bool;

    /// Magnitude shrinkage `sgn(z)·max(|z| - t, 0)`, phase preserved.
    fn soft(self, t: f64) -> Self;

    /// Projection onto the disc of radius `r`: `sgn(z)·min(|z|, r)`.
    fn clip(self, r: f64) -> Self;
}

impl Coefficient for f64 {
    fn modulus(self) -> f64 {
        self.abs()
    }

    fn real_dot(self, other: Self) -> f64 {
        self * other
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn soft(self, t: f64) -> Self {
        self.signum() * (self.abs() - t).max(0.0)
    }

    fn clip(self, r: f64) -> Self {
        self.clamp(-r, r)
    }
}

impl Coefficient for Complex64 {
    fn modulus(self) -> f64 {
        self.norm()
    }

    fn real_dot(self, other: Self) -> f64 {
        self.re * other.re + self.im * other.im
    }

    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }

    fn soft(self, t: f64) -> Self {
        let m = self.norm();
        if m <= t {
            Complex64::default()
        } else {
            self * ((m - t) / m)
        }
    }

    fn clip(self, r: f64) -> Self {
        let m = self.norm();
        if m <= r {
            self
        } else {
            self * (r / m)
        }
    }
}

/// Shape of the coefficient array: `rows` frequency channels by `frames` time
/// positions, stored frame-major (`values[frame * rows + row]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub rows: usize,
    pub frames: usize,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.rows * self.frames
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients<C> {
    pub values: Vec<C>,
    pub grid: Grid,
}

impl<C: Coefficient> Coefficients<C> {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            values: vec![C::default(); grid.len()],
            grid,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|c| c.real_dot(*c)).sum::<f64>().sqrt()
    }

    /// Real inner product `Re⟨self, other⟩`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.real_dot(*b))
            .sum()
    }

    /// `Σ w_k |c_k|`.
    pub fn weighted_l1(&self, weights: &[f64]) -> f64 {
        self.values
            .iter()
            .zip(weights)
            .map(|(c, w)| w * c.modulus())
            .sum()
    }
}

/// A Parseval-tight frame over real signals of a fixed length.
pub trait TightFrame: Send + Sync {
    type Coef: Coefficient;

    fn kind(&self) -> FrameKind;

    /// Padded signal length the frame is built for.
    fn signal_len(&self) -> usize;

    fn grid(&self) -> Grid;

    fn coeff_len(&self) -> usize {
        self.grid().len()
    }

    /// Per-coefficient ℓ1 weights. The weighted ℓ1 norm of stored coefficients
    /// equals the ℓ1 norm of the full (non-reduced) coefficient set.
    fn l1_weights(&self) -> &[f64];

    /// `c = A x`.
    fn analyze(&self, x: &[f64]) -> Result<Coefficients<Self::Coef>>;

    /// `x = D c`, with `D = A*`.
    fn synthesize(&self, c: &Coefficients<Self::Coef>) -> Result<Vec<f64>>;

    /// `‖A‖`, exactly 1 for a Parseval-tight frame. Debug builds confirm it by
    /// power iteration.
    fn operator_norm(&self) -> f64 {
        debug_assert!(
            (estimate_operator_norm(self, 3).unwrap_or(f64::NAN) - 1.0).abs() < 1e-6,
            "frame is not Parseval tight"
        );
        1.0
    }

    fn l1_norm(&self, c: &Coefficients<Self::Coef>) -> f64 {
        c.weighted_l1(self.l1_weights())
    }
}

/// Estimates `‖A‖` by power iteration on `D A`.
pub fn estimate_operator_norm<F: TightFrame + ?Sized>(frame: &F, iterations: usize) -> Result<f64> {
    let n = frame.signal_len();
    // Deterministic, non-degenerate start vector.
    let mut x: Vec<f64> = (0..n)
        .map(|i| ((i * 7919 % 104_729) as f64 / 104_729.0) - 0.37)
        .collect();
    let mut sq_norm = 0.0;
    for _ in 0..iterations.max(1) {
        let len = l2(&x);
        x.iter_mut().for_each(|v| *v /= len);
        let y = frame.synthesize(&frame.analyze(&x)?)?;
        sq_norm = dot(&x, &y);
        x = y;
    }
    Ok(sq_norm.sqrt())
}

pub(crate) fn l2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn check_signal_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(invalid(format!(
            "signal length {got} does not match frame length {expected}"
        )));
    }
    Ok(())
}

pub(crate) fn check_coeff_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(invalid(format!(
            "coefficient count {got} does not match frame coefficient count {expected}"
        )));
    }
    Ok(())
}

/// Hann window sampled at half-integer points, `sin²(π(k + ½)/len)`. It has no
/// zero taps, so the tight normalization never divides by zero inside the
/// support.
pub fn hann(len: usize) -> Vec<f64> {
    (0..len)
        .map(|k| {
            let s = (std::f64::consts::PI * (k as f64 + 0.5) / len as f64).sin();
            s * s
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameKind {
    Dgt,
    Wmdct,
}

impl FrameKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameKind::Dgt => "dgt",
            FrameKind::Wmdct => "wmdct",
        }
    }
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FrameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dgt" | "dgtreal" => Ok(FrameKind::Dgt),
            "wmdct" | "mdct" => Ok(FrameKind::Wmdct),
            other => Err(invalid(format!("unknown transform '{other}'"))),
        }
    }
}

/// Window length, channel count and hop. The hop only applies to the DGT; the
/// WMDCT always advances by `channels`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameGeometry {
    pub window_length: usize,
    pub channels: usize,
    pub hop: usize,
}

impl Default for FrameGeometry {
    /// 1024-tap Hann window, 1024 channels, hop 256 (DGT redundancy 4).
    fn default() -> Self {
        Self {
            window_length: 1024,
            channels: 1024,
            hop: 256,
        }
    }
}

/// Smallest multiple of `step` that is at least `max(n, minimum)`.
pub fn padded_length(n: usize, step: usize, minimum: usize) -> usize {
    let target = n.max(minimum).max(1);
    target.div_ceil(step) * step
}

/// Runtime choice between the two frame families.
#[derive(Debug, Clone)]
pub enum FrameSpec {
    Dgt(DgtFrame),
    Wmdct(WmdctFrame),
}

impl FrameSpec {
    /// Builds a frame of the given kind for a signal of `n` samples, zero-padding
    /// the length as needed.
    pub fn for_signal(kind: FrameKind, n: usize, geometry: FrameGeometry) -> Result<Self> {
        Ok(match kind {
            FrameKind::Dgt => FrameSpec::Dgt(DgtFrame::for_signal(n, geometry)?),
            FrameKind::Wmdct => FrameSpec::Wmdct(WmdctFrame::for_signal(n, geometry)?),
        })
    }

    pub fn kind(&self) -> FrameKind {
        match self {
            FrameSpec::Dgt(_) => FrameKind::Dgt,
            FrameSpec::Wmdct(_) => FrameKind::Wmdct,
        }
    }

    pub fn signal_len(&self) -> usize {
        match self {
            FrameSpec::Dgt(f) => f.signal_len(),
            FrameSpec::Wmdct(f) => f.signal_len(),
        }
    }

    pub fn coeff_len(&self) -> usize {
        match self {
            FrameSpec::Dgt(f) => f.coeff_len(),
            FrameSpec::Wmdct(f) => f.coeff_len(),
        }
    }
}
