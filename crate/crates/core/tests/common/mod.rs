#![allow(dead_code)]

use std::f64::consts::PI;

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparse_dequant::frames::{Coefficients, Complex64, DgtFrame, TightFrame, WmdctFrame};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_signal(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn random_real_coeffs(rng: &mut ChaCha8Rng, frame: &WmdctFrame) -> Coefficients<f64> {
    Coefficients {
        values: random_signal(rng, frame.coeff_len()),
        grid: frame.grid(),
    }
}

/// Random stored DGT coefficients. Self-conjugate rows get real values so the
/// coefficients lie in the range of the real analysis operator's storage.
pub fn random_dgt_coeffs(rng: &mut ChaCha8Rng, frame: &DgtFrame) -> Coefficients<Complex64> {
    let rows = frame.grid().rows;
    let m = frame.channels();
    let values = (0..frame.coeff_len())
        .map(|i| {
            let row = i % rows;
            let re = rng.gen_range(-1.0..1.0);
            let im = if row == 0 || 2 * row == m {
                0.0
            } else {
                rng.gen_range(-1.0..1.0)
            };
            Complex64::new(re, im)
        })
        .collect();
    Coefficients {
        values,
        grid: frame.grid(),
    }
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Tight Hann window for the painless real DGT, built from its definition.
pub fn tight_dgt_window(window_length: usize, channels: usize, hop: usize) -> Vec<f64> {
    let g: Vec<f64> = (0..window_length)
        .map(|k| (PI * (k as f64 + 0.5) / window_length as f64).sin().powi(2))
        .collect();
    (0..window_length)
        .map(|j| {
            let s: f64 = (0..window_length)
                .filter(|k| k % hop == j % hop)
                .map(|k| g[k] * g[k])
                .sum();
            g[j] / (channels as f64 * s).sqrt()
        })
        .collect()
}

/// Real DGT by direct summation, half spectrum with `√2` on non-self-conjugate
/// rows.
pub fn naive_dgt(x: &[f64], window_length: usize, channels: usize, hop: usize) -> Vec<Complex64> {
    let l = x.len();
    let g = tight_dgt_window(window_length, channels, hop);
    let mut out = Vec::new();
    for n in 0..l / hop {
        for m in 0..=channels / 2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, gj) in g.iter().enumerate() {
                let phase = -2.0 * PI * (m * j) as f64 / channels as f64;
                acc += Complex64::from_polar(gj * x[(n * hop + j) % l], phase);
            }
            let scale = if m == 0 || 2 * m == channels {
                1.0
            } else {
                2f64.sqrt()
            };
            out.push(acc * scale);
        }
    }
    out
}

/// Princen–Bradley-normalized Hann over a `2·channels` span.
pub fn mdct_window(window_length: usize, channels: usize) -> Vec<f64> {
    let span = 2 * channels;
    let offset = (span - window_length) / 2;
    let mut raw = vec![0.0; span];
    for k in 0..window_length {
        raw[offset + k] = (PI * (k as f64 + 0.5) / window_length as f64).sin().powi(2);
    }
    (0..span)
        .map(|j| {
            let p = raw[(j + channels) % span];
            raw[j] / (raw[j] * raw[j] + p * p).sqrt()
        })
        .collect()
}

/// Windowed MDCT by direct cosine summation.
pub fn naive_wmdct(x: &[f64], window_length: usize, channels: usize) -> Vec<f64> {
    let l = x.len();
    let m = channels as f64;
    let w = mdct_window(window_length, channels);
    let mut out = Vec::new();
    for n in 0..l / channels {
        for k in 0..channels {
            let acc: f64 = w
                .iter()
                .enumerate()
                .map(|(j, wj)| {
                    let arg = PI / m * (j as f64 + 0.5 + m / 2.0) * (k as f64 + 0.5);
                    wj * x[(n * channels + j) % l] * arg.cos()
                })
                .sum();
            out.push((2.0 / m).sqrt() * acc);
        }
    }
    out
}

/// Columns of the synthesis operator of an orthonormal WMDCT, built from the
/// direct formula: `d[i]` is the signal of unit coefficient `i`.
pub fn wmdct_synthesis_matrix(window_length: usize, channels: usize, len: usize) -> Vec<Vec<f64>> {
    // Orthonormal: D = Aᵀ, so column i of D is row i of A.
    let rows: Vec<Vec<f64>> = (0..len)
        .map(|j| {
            let mut e = vec![0.0; len];
            e[j] = 1.0;
            naive_wmdct(&e, window_length, channels)
        })
        .collect();
    (0..len).map(|i| rows.iter().map(|r| r[i]).collect()).collect()
}

/// Minimum of `Σ|c_i|` subject to `lower ≤ Σ_i c_i d_i ≤ upper`, by linear
/// programming over `(c, t)` with `-t ≤ c ≤ t`.
pub fn l1_box_lp(columns: &[Vec<f64>], lower: &[f64], upper: &[f64]) -> f64 {
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let n = columns.len();
    let c: Vec<_> = (0..n)
        .map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)))
        .collect();
    let t: Vec<_> = (0..n).map(|_| lp.add_var(1.0, (0.0, f64::INFINITY))).collect();
    for i in 0..n {
        lp.add_constraint([(c[i], 1.0), (t[i], -1.0)], ComparisonOp::Le, 0.0);
        lp.add_constraint([(c[i], -1.0), (t[i], -1.0)], ComparisonOp::Le, 0.0);
    }
    for row in 0..lower.len() {
        let terms: Vec<_> = (0..n)
            .filter(|&i| columns[i][row] != 0.0)
            .map(|i| (c[i], columns[i][row]))
            .collect();
        lp.add_constraint(terms.as_slice(), ComparisonOp::Ge, lower[row]);
        lp.add_constraint(terms.as_slice(), ComparisonOp::Le, upper[row]);
    }
    let solution = lp
        .solve()
        .expect("LP oracle failed")
        .into_solution()
        .expect("LP oracle interrupted");
    solution.objective()
}
