//! Generates the bundled speech-like test clips in `crates/core/data/`.
//!
//! Each clip is a source-filter synthesis of a male-voiced syllable sequence:
//! a Rosenberg glottal pulse train with a drifting pitch contour, shaped by four
//! time-varying formant resonators, interleaved with noise fricatives and short
//! pauses. Output is 16 kHz mono 16-bit PCM, peak-normalized.
//!
//! ```bash
//! cargo run -p sparse-dequant --example synth_speech -- crates/core/data
//! ```

use std::f64::consts::PI;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparse_dequant::audio_io::{peak_normalize, write_wav, BitDepth};
use sparse_dequant::quantizer::Signal;

const RATE: f64 = 16_000.0;

/// (F1, F2, F3) in Hz for a handful of vowels.
const VOWELS: [(f64, f64, f64); 6] = [
    (730.0, 1090.0, 2440.0),
    (270.0, 2290.0, 3010.0),
    (300.0, 870.0, 2240.0),
    (530.0, 1840.0, 2480.0),
    (570.0, 840.0, 2410.0),
    (660.0, 1720.0, 2410.0),
];
const BANDWIDTHS: [f64; 4] = [80.0, 100.0, 140.0, 200.0];
const F4: f64 = 3500.0;

struct Resonator {
    y1: f64,
    y2: f64,
}

impl Resonator {
    fn step(&mut self, x: f64, freq: f64, bw: f64) -> f64 {
        let r = (-PI * bw / RATE).exp();
        let theta = 2.0 * PI * freq / RATE;
        let a1 = 2.0 * r * theta.cos();
        let a2 = -r * r;
        let gain = 1.0 - a1 - a2;
        let y = gain * x + a1 * self.y1 + a2 * self.y2;
        self.y2 = self.y1;
        self.y1 = y;
        y
    }
}

/// Derivative of the Rosenberg glottal flow at phase `t ∈ [0, 1)`.
fn glottal_derivative(t: f64) -> f64 {
    let (open, close) = (0.4, 0.16);
    if t < open {
        0.5 * PI / open * (PI * t / open).sin()
    } else if t < open + close {
        -0.5 * PI / close * (0.5 * PI * (t - open) / close).sin()
    } else {
        0.0
    }
}

fn raised_cosine_envelope(i: usize, len: usize, ramp: usize) -> f64 {
    let ramp = ramp.min(len / 2).max(1);
    let edge = |k: usize| 0.5 - 0.5 * (PI * k as f64 / ramp as f64).cos();
    if i < ramp {
        edge(i)
    } else if i >= len - ramp {
        edge(len - 1 - i)
    } else {
        1.0
    }
}

fn synthesize(seed: u64, seconds: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = (seconds * RATE) as usize;
    let mut out = Vec::with_capacity(total);
    let mut resonators: Vec<Resonator> = (0..4).map(|_| Resonator { y1: 0.0, y2: 0.0 }).collect();
    let mut phase = 0.0;
    let base_f0 = rng.gen_range(95.0..130.0);
    let mut formants = VOWELS[0];
    let mut prev_noise = 0.0;

    out.extend(std::iter::repeat_n(0.0, (0.08 * RATE) as usize));
    while out.len() < total {
        if rng.gen_bool(0.45) {
            let len = (rng.gen_range(0.04..0.09) * RATE) as usize;
            let level = rng.gen_range(0.04..0.12);
            for i in 0..len {
                let white: f64 = rng.gen_range(-1.0..1.0);
                let hp = white - 0.9 * prev_noise;
                prev_noise = white;
                out.push(level * hp * raised_cosine_envelope(i, len, 80));
            }
        }

        let target = VOWELS[rng.gen_range(0..VOWELS.len())];
        let len = (rng.gen_range(0.12..0.25) * RATE) as usize;
        let level = 10f64.powf(rng.gen_range(-1.0..0.0));
        let start = formants;
        let progress = out.len() as f64 / total as f64;
        let f0_start = base_f0 * (1.15 - 0.25 * progress) * rng.gen_range(0.95..1.08);
        let f0_end = f0_start * rng.gen_range(0.85..1.1);
        for i in 0..len {
            let t = i as f64 / len as f64;
            let glide = (t / 0.3).min(1.0);
            formants = (
                start.0 + (target.0 - start.0) * glide,
                start.1 + (target.1 - start.1) * glide,
                start.2 + (target.2 - start.2) * glide,
            );
            let f0 = (f0_start + (f0_end - f0_start) * t) * (1.0 + 0.01 * rng.gen_range(-1.0..1.0));
            phase = (phase + f0 / RATE) % 1.0;
            let source = glottal_derivative(phase) + 0.02 * rng.gen_range(-1.0..1.0);
            let mut y = source;
            for (k, (res, bw)) in resonators.iter_mut().zip(BANDWIDTHS).enumerate() {
                let f = [formants.0, formants.1, formants.2, F4][k];
                y = res.step(y, f, bw);
            }
            out.push(level * y * raised_cosine_envelope(i, len, 320));
        }

        let gap = (rng.gen_range(0.03..0.08) * RATE) as usize;
        out.extend(std::iter::repeat_n(0.0, gap));
    }
    out.truncate(total);
    for s in out.iter_mut() {
        *s += 1e-4 * rng.gen_range(-1.0..1.0);
    }
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "crates/core/data".into()),
    );
    std::fs::create_dir_all(&dir)?;
    for (name, seed, seconds) in [
        ("speech_a", 11, 2.2),
        ("speech_b", 23, 2.0),
        ("speech_c", 37, 2.4),
    ] {
        let signal = peak_normalize(&Signal::new(synthesize(seed, seconds), RATE as u32)?)?;
        let path = dir.join(format!("{name}.wav"));
        write_wav(&path, &signal, BitDepth::Int16)?;
        println!("wrote {} ({} samples)", path.display(), signal.len());
    }
    Ok(())
}
