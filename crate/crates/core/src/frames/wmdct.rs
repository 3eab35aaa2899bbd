use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{
    check_coeff_len, check_signal_len, hann, padded_length, Coefficients, FrameGeometry, FrameKind, Grid,
    TightFrame,
};
use crate::error::{invalid, Result};

/// Windowed MDCT: a critically sampled lapped orthonormal basis.
///
/// Block `n` spans the `2·channels` samples starting at `n·channels`
/// (periodically). The Hann window of `window_length` taps is centred in that
/// span and normalized so that `w[j]² + w[j + M]² = 1` (Princen–Bradley), which
/// makes the basis orthonormal. With `window_length == channels` the normalized
/// window is flat over the middle half of the span.
#[derive(Clone)]
pub struct WmdctFrame {
    window: Vec<f64>,
    channels: usize,
    signal_len: usize,
    grid: Grid,
    weights: Vec<f64>,
    // sqrt(2/M) w_j e^{-iπ j / 2M}
    pre: Vec<Complex64>,
    // e^{-iπ (k + ½)(M/2 + ½) / M}
    post: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for WmdctFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WmdctFrame")
            .field("channels", &self.channels)
            .field("signal_len", &self.signal_len)
            .field("grid", &self.grid)
            .finish()
    }
}

impl WmdctFrame {
    /// Requires `channels ≤ window_length ≤ 2·channels` with an even window
    /// length, and `signal_len` a multiple of `channels` spanning at least two
    /// blocks.
    pub fn new(window_length: usize, channels: usize, signal_len: usize) -> Result<Self> {
        if channels == 0 || signal_len == 0 {
            return Err(invalid("WMDCT channels and signal length must be positive"));
        }
        if !signal_len.is_multiple_of(channels) {
            return Err(invalid(format!(
                "{channels} channels do not divide signal length {signal_len}"
            )));
        }
        if signal_len < 2 * channels {
            return Err(invalid(format!(
                "signal length {signal_len} must cover at least two blocks of {channels}"
            )));
        }
        if window_length < channels || window_length > 2 * channels || !window_length.is_multiple_of(2) {
            return Err(invalid(format!(
                "window length {window_length} must be even and within [{channels}, {}]",
                2 * channels
            )));
        }

        let m = channels;
        let span = 2 * m;
        let offset = (span - window_length) / 2;
        let mut raw = vec![0.0; span];
        raw[offset..offset + window_length].copy_from_slice(&hann(window_length));
        let window: Vec<f64> = (0..span)
            .map(|j| {
                let partner = raw[(j + m) % span];
                raw[j] / (raw[j] * raw[j] + partner * partner).sqrt()
            })
            .collect();

        let scale = (2.0 / m as f64).sqrt();
        let pre = window
            .iter()
            .enumerate()
            .map(|(j, w)| Complex64::from_polar(scale * w, -PI * j as f64 / span as f64))
            .collect();
        let n0 = 0.5 + m as f64 / 2.0;
        let post = (0..m)
            .map(|k| Complex64::from_polar(1.0, -PI * n0 * (k as f64 + 0.5) / m as f64))
            .collect();

        let grid = Grid {
            rows: m,
            frames: signal_len / m,
        };
        let mut planner = FftPlanner::new();
        Ok(Self {
            window,
            channels,
            signal_len,
            grid,
            weights: vec![1.0; grid.len()],
            pre,
            post,
            forward: planner.plan_fft_forward(span),
            inverse: planner.plan_fft_inverse(span),
        })
    }

    /// Frame for a signal of `n` samples, padded to a multiple of `channels`
    /// covering at least one window and two blocks. `geometry.hop` is ignored.
    pub fn for_signal(n: usize, geometry: FrameGeometry) -> Result<Self> {
        let m = geometry.channels.max(1);
        let len = padded_length(n, m, geometry.window_length.max(2 * m));
        Self::new(geometry.window_length, geometry.channels, len)
    }

    /// Normalized window over the `2·channels` span of a block.
    pub fn window(&self) -> &[f64] {
        &self.window
    }

    pub fn channels(&self) -> usize {
        self.channels
    }
}

impl TightFrame for WmdctFrame {
    type Coef = f64;

    fn kind(&self) -> FrameKind {
        FrameKind::Wmdct
    }

    fn signal_len(&self) -> usize {
        self.signal_len
    }

    fn grid(&self) -> Grid {
        self.grid
    }

    fn l1_weights(&self) -> &[f64] {
        &self.weights
    }

    fn analyze(&self, x: &[f64]) -> Result<Coefficients<f64>> {
        check_signal_len(self.signal_len, x.len())?;
        let m = self.channels;
        let mut out = Vec::with_capacity(self.grid.len());
        let mut buf = vec![Complex64::default(); 2 * m];
        let mut scratch = vec![Complex64::default(); self.forward.get_inplace_scratch_len()];
        for n in 0..self.grid.frames {
            let start = n * m;
            for (j, (b, p)) in buf.iter_mut().zip(&self.pre).enumerate() {
                *b = p * x[(start + j) % self.signal_len];
            }
            self.forward.process_with_scratch(&mut buf, &mut scratch);
            out.extend(buf[..m].iter().zip(&self.post).map(|(y, p)| (y * p).re));
        }
        Ok(Coefficients {
            values: out,
            grid: self.grid,
        })
    }

    fn synthesize(&self, c: &Coefficients<f64>) -> Result<Vec<f64>> {
        check_coeff_len(self.grid.len(), c.len())?;
        let m = self.channels;
        let mut x = vec![0.0; self.signal_len];
        let mut buf = vec![Complex64::default(); 2 * m];
        let mut scratch = vec![Complex64::default(); self.inverse.get_inplace_scratch_len()];
        for (n, block) in c.values.chunks_exact(m).enumerate() {
            for ((b, v), p) in buf.iter_mut().zip(block).zip(&self.post) {
                *b = p.conj() * *v;
            }
            buf[m..].iter_mut().for_each(|b| *b = Complex64::default());
            self.inverse.process_with_scratch(&mut buf, &mut scratch);
            let start = n * m;
            for (j, (b, p)) in buf.iter().zip(&self.pre).enumerate() {
                x[(start + j) % self.signal_len] += (p.conj() * b).re;
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry() {
        assert_eq!(WmdctFrame::new(1024, 1024, 16384).unwrap().coeff_len(), 16384);
        assert_eq!(WmdctFrame::new(4, 4, 16).unwrap().coeff_len(), 16);
        assert!(WmdctFrame::new(1024, 1000, 16384).is_err());
        assert!(WmdctFrame::new(4, 4, 4).is_err());
        assert!(WmdctFrame::new(2, 4, 16).is_err());
        assert!(WmdctFrame::new(10, 4, 16).is_err());
    }

    #[test]
    fn princen_bradley() {
        for (gl, m) in [(4, 4), (6, 4), (8, 4), (1024, 1024), (2048, 1024)] {
            let f = WmdctFrame::new(gl, m, 4 * m).unwrap();
            let w = f.window();
            for j in 0..m {
                assert!((w[j] * w[j] + w[j + m] * w[j + m] - 1.0).abs() < 1e-12);
                assert!((w[j] - w[2 * m - 1 - j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn matches_direct_cosine_sum() {
        let m = 4;
        let f = WmdctFrame::new(6, m, 12).unwrap();
        let x: Vec<f64> = (0..12).map(|i| ((i * 5 % 7) as f64 - 3.0) / 4.0).collect();
        let c = f.analyze(&x).unwrap();
        let scale = (2.0 / m as f64).sqrt();
        for n in 0..3 {
            for k in 0..m {
                let direct: f64 = (0..2 * m)
                    .map(|j| {
                        let arg = PI / m as f64 * (j as f64 + 0.5 + m as f64 / 2.0) * (k as f64 + 0.5);
                        scale * f.window()[j] * x[(n * m + j) % 12] * arg.cos()
                    })
                    .sum();
                assert!((c.values[n * m + k] - direct).abs() < 1e-12);
            }
        }
    }
}
