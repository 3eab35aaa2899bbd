//! Restoration quality metrics.

use crate::error::{invalid, Result};
use crate::quantizer::QuantizedSignal;

/// `10·log₁₀(‖u‖² / ‖u - v‖²)` in dB. Returns `f64::INFINITY` when `v == u`.
pub fn sdr(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(invalid(format!(
            "SDR of vectors with lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    let signal: f64 = u.iter().map(|a| a * a).sum();
    if signal == 0.0 {
        return Err(invalid("SDR reference signal is all zeros"));
    }
    let error: f64 = u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum();
    if error == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (signal / error).log10())
}

/// `sdr(original, restored) - sdr(original, quantized)`.
///
/// Infinite when `restored == original`; if both terms are infinite the
/// improvement is 0.
pub fn delta_sdr(original: &[f64], quantized: &[f64], restored: &[f64]) -> Result<f64> {
    let before = sdr(original, quantized)?;
    let after = sdr(original, restored)?;
    if before == after {
        return Ok(0.0);
    }
    Ok(after - before)
}

/// `max(0, max_n |restored_n - q_n| - Δ/2)`.
pub fn linf_violation(restored: &[f64], q: &QuantizedSignal) -> Result<f64> {
    if restored.len() != q.len() {
        return Err(invalid(format!(
            "restored length {} differs from quantized length {}",
            restored.len(),
            q.len()
        )));
    }
    let half = q.delta() / 2.0;
    let worst = restored
        .iter()
        .zip(q.samples())
        .map(|(r, s)| (r - s).abs())
        .fold(0.0, f64::max);
    Ok((worst - half).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationReport {
    pub sdr_quantized: f64,
    pub sdr_restored: f64,
    pub delta_sdr: f64,
    pub linf_violation: f64,
    pub l1_objective: f64,
}

impl EvaluationReport {
    pub fn evaluate(
        original: &[f64],
        q: &QuantizedSignal,
        restored: &[f64],
        l1_objective: f64,
    ) -> Result<Self> {
        let sdr_quantized = sdr(original, q.samples())?;
        let sdr_restored = sdr(original, restored)?;
        Ok(Self {
            sdr_quantized,
            sdr_restored,
            delta_sdr: delta_sdr(original, q.samples(), restored)?,
            linf_violation: linf_violation(restored, q)?,
            l1_objective,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sdr_examples() {
        let u = [0.5, -0.25, 1.0, 0.1];
        assert_eq!(sdr(&u, &u).unwrap(), f64::INFINITY);
        let half: Vec<f64> = u.iter().map(|x| x / 2.0).collect();
        assert!((sdr(&u, &half).unwrap() - 10.0 * 4f64.log10()).abs() < 1e-12);
        assert!((sdr(&u, &half).unwrap() - 6.0206).abs() < 1e-4);
        assert_eq!(sdr(&u, &[0.0; 4]).unwrap(), 0.0);
        assert!(sdr(&u, &[0.0; 3]).is_err());
        assert!(sdr(&[0.0; 4], &u).is_err());
    }

    #[test]
    fn delta_sdr_examples() {
        let x = [0.3, -0.2, 0.6];
        let q = [0.375, -0.125, 0.625];
        assert_eq!(delta_sdr(&x, &q, &q).unwrap(), 0.0);
        assert_eq!(delta_sdr(&x, &q, &x).unwrap(), f64::INFINITY);
        let closer = [0.31, -0.19, 0.61];
        assert!(delta_sdr(&x, &q, &closer).unwrap() > 0.0);
    }

    #[test]
    fn violation_examples() {
        let q = QuantizedSignal::from_levels(vec![0.375, -0.125], 3, 8000).unwrap();
        let d = q.delta();
        assert_eq!(linf_violation(q.samples(), &q).unwrap(), 0.0);
        let edge: Vec<f64> = q.samples().iter().map(|s| s + d / 2.0).collect();
        assert_eq!(linf_violation(&edge, &q).unwrap(), 0.0);
        let out: Vec<f64> = q.samples().iter().map(|s| s + d).collect();
        assert_eq!(linf_violation(&out, &q).unwrap(), d / 2.0);
        assert!(linf_violation(&[0.0], &q).is_err());
    }

    proptest! {
        #[test]
        fn sdr_scale_invariant(
            u in prop::collection::vec(-1.0f64..1.0, 8),
            v in prop::collection::vec(-1.0f64..1.0, 8),
            alpha in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0],
        ) {
            prop_assume!(u.iter().any(|x| *x != 0.0) && u != v);
            let su: Vec<f64> = u.iter().map(|x| alpha * x).collect();
            let sv: Vec<f64> = v.iter().map(|x| alpha * x).collect();
            prop_assert!((sdr(&u, &v).unwrap() - sdr(&su, &sv).unwrap()).abs() < 1e-9);
        }

        #[test]
        fn delta_sdr_antisymmetric(
            x in prop::collection::vec(-1.0f64..1.0, 8),
            a in prop::collection::vec(-1.0f64..1.0, 8),
            b in prop::collection::vec(-1.0f64..1.0, 8),
        ) {
            prop_assume!(x.iter().any(|v| *v != 0.0) && x != a && x != b);
            let ab = delta_sdr(&x, &a, &b).unwrap();
            let ba = delta_sdr(&x, &b, &a).unwrap();
            prop_assert!((ab + ba).abs() < 1e-9);
        }
    }
}
