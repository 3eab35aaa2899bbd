use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{
    check_coeff_len, check_signal_len, hann, padded_length, Coefficients, FrameGeometry, FrameKind, Grid,
    TightFrame,
};
use crate::error::{invalid, Error, Result};

/// Real-input discrete Gabor transform with a canonical tight Hann window.
///
/// Only the non-negative frequency rows `0..=channels/2` are stored. Rows that
/// are not self-conjugate are scaled by `√2`, so the stored representation is
/// itself an isometry and its ℓ1 weights are `√2` on those rows.
///
/// Atom `(m, n)` is `g(l - n·hop) e^{2πi m (l - n·hop) / channels}`, taken
/// periodically over `signal_len`.
#[derive(Clone)]
pub struct DgtFrame {
    window: Vec<f64>,
    channels: usize,
    hop: usize,
    signal_len: usize,
    grid: Grid,
    row_scale: Vec<f64>,
    weights: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for DgtFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DgtFrame")
            .field("window_length", &self.window.len())
            .field("channels", &self.channels)
            .field("hop", &self.hop)
            .field("signal_len", &self.signal_len)
            .field("grid", &self.grid)
            .finish()
    }
}

impl DgtFrame {
    /// Builds the frame for an already padded `signal_len`.
    ///
    /// Only the painless case is supported: `window_length ≤ channels` and
    /// `hop ≤ window_length`.
    pub fn new(window_length: usize, channels: usize, hop: usize, signal_len: usize) -> Result<Self> {
        if window_length == 0 || channels == 0 || hop == 0 || signal_len == 0 {
            return Err(invalid(
                "DGT window length, channels, hop and signal length must be positive",
            ));
        }
        if !signal_len.is_multiple_of(hop) {
            return Err(invalid(format!(
                "hop {hop} does not divide signal length {signal_len}"
            )));
        }
        if window_length > channels {
            return Err(Error::Unsupported(format!(
                "window length {window_length} exceeds {channels} channels (non-painless frame)"
            )));
        }
        if hop > window_length {
            return Err(Error::Unsupported(format!(
                "hop {hop} exceeds window length {window_length}; translates leave gaps"
            )));
        }
        if window_length > signal_len {
            return Err(invalid(format!(
                "window length {window_length} exceeds signal length {signal_len}"
            )));
        }

        let mut window = hann(window_length);
        let mut translates = vec![0.0; hop];
        for (j, g) in window.iter().enumerate() {
            translates[j % hop] += g * g;
        }
        for (j, g) in window.iter_mut().enumerate() {
            *g /= (channels as f64 * translates[j % hop]).sqrt();
        }

        let rows = channels / 2 + 1;
        let row_scale: Vec<f64> = (0..rows)
            .map(|m| {
                let self_conjugate = m == 0 || 2 * m == channels;
                if self_conjugate {
                    1.0
                } else {
                    std::f64::consts::SQRT_2
                }
            })
            .collect();
        let grid = Grid {
            rows,
            frames: signal_len / hop,
        };
        let weights = (0..grid.frames).flat_map(|_| row_scale.iter().copied()).collect();

        let mut planner = FftPlanner::new();
        Ok(Self {
            window,
            channels,
            hop,
            signal_len,
            grid,
            row_scale,
            weights,
            forward: planner.plan_fft_forward(channels),
            inverse: planner.plan_fft_inverse(channels),
        })
    }

    /// Frame for a signal of `n` samples, padded to a multiple of the hop that
    /// is at least one window long.
    pub fn for_signal(n: usize, geometry: FrameGeometry) -> Result<Self> {
        let len = padded_length(n, geometry.hop, geometry.window_length);
        Self::new(geometry.window_length, geometry.channels, geometry.hop, len)
    }

    /// The tight-normalized window taps.
    pub fn window(&self) -> &[f64] {
        &self.window
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn hop(&self) -> usize {
        self.hop
    }

    /// `channels / hop`.
    pub fn redundancy(&self) -> f64 {
        self.channels as f64 / self.hop as f64
    }

    /// Number of positions in the full (both half-spectra) coefficient lattice.
    pub fn full_coeff_len(&self) -> usize {
        self.channels * self.grid.frames
    }
}

impl TightFrame for DgtFrame {
    type Coef = Complex64;

    fn kind(&self) -> FrameKind {
        FrameKind::Dgt
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

    fn analyze(&self, x: &[f64]) -> Result<Coefficients<Complex64>> {
        check_signal_len(self.signal_len, x.len())?;
        let m = self.channels;
        let rows = self.grid.rows;
        let mut out = Vec::with_capacity(self.grid.len());
        let mut buf = vec![Complex64::default(); m];
        let mut scratch = vec![Complex64::default(); self.forward.get_inplace_scratch_len()];
        for n in 0..self.grid.frames {
            let start = n * self.hop;
            buf.iter_mut().for_each(|b| *b = Complex64::default());
            for (j, g) in self.window.iter().enumerate() {
                buf[j] = Complex64::new(x[(start + j) % self.signal_len] * g, 0.0);
            }
            self.forward.process_with_scratch(&mut buf, &mut scratch);
            out.extend(buf[..rows].iter().zip(&self.row_scale).map(|(c, s)| c * s));
        }
        Ok(Coefficients {
            values: out,
            grid: self.grid,
        })
    }

    fn synthesize(&self, c: &Coefficients<Complex64>) -> Result<Vec<f64>> {
        check_coeff_len(self.grid.len(), c.len())?;
        let m = self.channels;
        let rows = self.grid.rows;
        let mut x = vec![0.0; self.signal_len];
        let mut buf = vec![Complex64::default(); m];
        let mut scratch = vec![Complex64::default(); self.inverse.get_inplace_scratch_len()];
        for (n, column) in c.values.chunks_exact(rows).enumerate() {
            buf.iter_mut().for_each(|b| *b = Complex64::default());
            for ((b, v), s) in buf.iter_mut().zip(column).zip(&self.row_scale) {
                *b = v * s;
            }
            self.inverse.process_with_scratch(&mut buf, &mut scratch);
            let start = n * self.hop;
            for (j, g) in self.window.iter().enumerate() {
                x[(start + j) % self.signal_len] += g * buf[j].re;
            }
        }
        Ok(x)
    }
}
