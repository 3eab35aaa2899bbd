//! Mid-riser uniform quantization and the feasibility box it induces.
//!
//! A word length of `w` bits gives the step `Δ = 2^(1-w)` and the levels
//! `±Δ(k + ½)`, `k ≥ 0`. Every quantized sample `q_n` defines the closed interval
//! `[q_n - Δ/2, q_n + Δ/2]` that a consistent restoration must stay inside.

use crate::error::{invalid, Result};

pub const MIN_WORD_LENGTH: u32 = 2;
pub const MAX_WORD_LENGTH: u32 = 16;

/// Absolute slack used by consistency checks at the box boundary.
pub const DEFAULT_CONSISTENCY_TOL: f64 = 1e-9;

/// A real mono waveform.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl Signal {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if samples.is_empty() {
            return Err(invalid("signal must contain at least one sample"));
        }
        if sample_rate == 0 {
            return Err(invalid("sample rate must be positive"));
        }
        if let Some(n) = samples.iter().position(|s| !s.is_finite()) {
            return Err(invalid(format!("sample {n} is not finite")));
        }
        Ok(Self { samples, sample_rate })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Output of [`quantize`]: samples on the mid-riser lattice plus the step that
/// produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedSignal {
    samples: Vec<f64>,
    word_length: u32,
    delta: f64,
    sample_rate: u32,
}

impl QuantizedSignal {
    /// Wraps samples that are already quantized, checking that every one of them
    /// lies on the `w`-bit mid-riser lattice.
    pub fn from_levels(samples: Vec<f64>, word_length: u32, sample_rate: u32) -> Result<Self> {
        let delta = quantization_step(word_length)?;
        if samples.is_empty() {
            return Err(invalid("quantized signal must contain at least one sample"));
        }
        if sample_rate == 0 {
            return Err(invalid("sample rate must be positive"));
        }
        let peak = 1.0 - delta / 2.0;
        for (n, &s) in samples.iter().enumerate() {
            if !is_level(s, delta) || s.abs() > peak {
                return Err(invalid(format!(
                    "sample {n} = {s} is not a {word_length}-bit mid-riser level"
                )));
            }
        }
        Ok(Self {
            samples,
            word_length,
            delta,
            sample_rate,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn word_length(&self) -> u32 {
        self.word_length
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn to_signal(&self) -> Signal {
        Signal {
            samples: self.samples.clone(),
            sample_rate: self.sample_rate,
        }
    }
}

fn is_level(s: f64, delta: f64) -> bool {
    let k = s.abs() / delta - 0.5;
    k >= 0.0 && k.fract() == 0.0
}

fn check_word_length(word_length: u32) -> Result<()> {
    if !(MIN_WORD_LENGTH..=MAX_WORD_LENGTH).contains(&word_length) {
        return Err(invalid(format!(
            "word length {word_length} outside {MIN_WORD_LENGTH}..={MAX_WORD_LENGTH}"
        )));
    }
    Ok(())
}

/// `Δ = 2^(1-w)`.
pub fn quantization_step(word_length: u32) -> Result<f64> {
    check_word_length(word_length)?;
    Ok(2f64.powi(1 - word_length as i32))
}

/// Quantizes a single sample. `delta` must be a valid step.
pub(crate) fn quantize_sample(x: f64, delta: f64) -> f64 {
    let sign = if x >= 0.0 { 1.0 } else { -1.0 };
    let level = delta * ((x.abs() / delta).floor() + 0.5);
    // Overload: |x| ≥ 1 would need a level outside the w-bit code range.
    sign * level.min(1.0 - delta / 2.0)
}

/// Mid-riser quantization with `sgn⁺(0) = 1` and overload clamping to
/// `±(1 - Δ/2)`.
pub fn quantize(x: &Signal, word_length: u32) -> Result<QuantizedSignal> {
    let delta = quantization_step(word_length)?;
    let samples = x.samples.iter().map(|&s| quantize_sample(s, delta)).collect();
    Ok(QuantizedSignal {
        samples,
        word_length,
        delta,
        sample_rate: x.sample_rate,
    })
}

/// Per-sample `(q_n - Δ/2, q_n + Δ/2)`.
pub fn feasibility_bounds(q: &QuantizedSignal) -> Vec<(f64, f64)> {
    let half = q.delta / 2.0;
    q.samples.iter().map(|&s| (s - half, s + half)).collect()
}

/// True iff `max_n |restored_n - q_n| ≤ Δ/2 + tol`.
pub fn is_consistent(restored: &Signal, q: &QuantizedSignal, tol: f64) -> Result<bool> {
    if restored.len() != q.len() {
        return Err(invalid(format!(
            "length mismatch: restored has {} samples, quantized has {}",
            restored.len(),
            q.len()
        )));
    }
    let half = q.delta / 2.0;
    Ok(restored
        .samples
        .iter()
        .zip(&q.samples)
        .all(|(r, s)| (r - s).abs() <= half + tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(v: &[f64]) -> Signal {
        Signal::new(v.to_vec(), 16_000).unwrap()
    }

    #[test]
    fn step_sizes() {
        assert_eq!(quantization_step(2).unwrap(), 0.5);
        assert_eq!(quantization_step(3).unwrap(), 0.25);
        assert_eq!(quantization_step(8).unwrap(), 0.0078125);
        assert!(quantization_step(1).is_err());
        assert!(quantization_step(17).is_err());
    }

    #[test]
    fn quantize_examples() {
        let q = quantize(&sig(&[0.3, 0.0, -0.3, 1.0, -1.0]), 3).unwrap();
        assert_eq!(q.samples(), &[0.375, 0.125, -0.375, 0.875, -0.875]);
        assert_eq!(q.delta(), 0.25);
    }

    #[test]
    fn non_finite_input_rejected() {
        assert!(Signal::new(vec![0.0, f64::NAN], 8000).is_err());
        assert!(Signal::new(vec![f64::INFINITY], 8000).is_err());
        assert!(Signal::new(vec![], 8000).is_err());
    }

    #[test]
    fn bounds() {
        let q = QuantizedSignal::from_levels(vec![0.375, -0.125, 0.875], 3, 8000).unwrap();
        assert_eq!(
            feasibility_bounds(&q),
            vec![(0.25, 0.5), (-0.25, 0.0), (0.75, 1.0)]
        );
    }

    #[test]
    fn from_levels_rejects_off_lattice() {
        assert!(QuantizedSignal::from_levels(vec![0.3], 3, 8000).is_err());
        assert!(QuantizedSignal::from_levels(vec![1.125], 3, 8000).is_err());
    }

    #[test]
    fn consistency_examples() {
        let q = QuantizedSignal::from_levels(vec![0.375, -0.125, 0.875], 3, 8000).unwrap();
        let half = q.delta() / 2.0;
        assert!(is_consistent(&q.to_signal(), &q, 0.0).unwrap());
        let edge = sig(&q.samples().iter().map(|s| s + half).collect::<Vec<_>>());
        assert!(is_consistent(&edge, &q, 0.0).unwrap());
        let out = sig(&q.samples().iter().map(|s| s + q.delta()).collect::<Vec<_>>());
        assert!(!is_consistent(&out, &q, 0.0).unwrap());
        assert!(is_consistent(&sig(&[0.0]), &q, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn error_within_half_step(x in -1.0f64..=1.0, w in 2u32..=16) {
            let delta = quantization_step(w).unwrap();
            let q = quantize_sample(x, delta);
            prop_assert!((x - q).abs() <= delta / 2.0);
            prop_assert!(is_level(q, delta));
        }

        #[test]
        fn idempotent(x in -1.5f64..1.5, w in 2u32..=16) {
            let delta = quantization_step(w).unwrap();
            let q = quantize_sample(x, delta);
            prop_assert_eq!(quantize_sample(q, delta), q);
        }

        #[test]
        fn monotone(a in -1.5f64..1.5, b in -1.5f64..1.5, w in 2u32..=16) {
            let delta = quantization_step(w).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(quantize_sample(lo, delta) <= quantize_sample(hi, delta));
        }
    }
}
