//! Mono WAV input/output and peak normalization.
//!
//! Integer PCM maps to amplitudes by dividing by `2^(bits-1)`, so full-scale
//! negative is exactly `-1.0` and the positive maximum is `1 - 2^(1-bits)`.

use std::path::{Path, PathBuf};

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};

use crate::error::{invalid, Error, Result};
use crate::quantizer::Signal;

#[derive(Debug, Clone)]
pub struct AudioFile {
    pub path: PathBuf,
    pub signal: Signal,
    /// Bits per sample of the source container.
    pub source_bit_depth: u16,
}

/// Storage format for [`write_wav`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitDepth {
    Int8,
    Int16,
    Int24,
    Int32,
    Float32,
}

impl BitDepth {
    pub fn bits(self) -> u16 {
        match self {
            BitDepth::Int8 => 8,
            BitDepth::Int16 => 16,
            BitDepth::Int24 => 24,
            BitDepth::Int32 => 32,
            BitDepth::Float32 => 32,
        }
    }
}

pub fn read_wav(path: impl AsRef<Path>) -> Result<AudioFile> {
    let path = path.as_ref();
    let reader = WavReader::open(path).map_err(|e| match e {
        hound::Error::IoError(io) => Error::Io(io),
        hound::Error::Unsupported | hound::Error::FormatError(_) => {
            Error::UnsupportedFormat(format!("{}: {e}", path.display()))
        }
        other => Error::Wav(other),
    })?;
    let spec = reader.spec();
    if spec.channels != 1 {
        return Err(Error::UnsupportedFormat(format!(
            "{}: {} channels, only mono is supported",
            path.display(),
            spec.channels
        )));
    }
    let samples: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (SampleFormat::Float, 32) => reader
            .into_samples::<f32>()
            .map(|s| s.map(f64::from))
            .collect::<std::result::Result<_, _>>()?,
        (SampleFormat::Int, bits @ (8 | 16 | 24 | 32)) => {
            let scale = 2f64.powi(bits as i32 - 1);
            reader
                .into_samples::<i32>()
                .map(|s| s.map(|v| v as f64 / scale))
                .collect::<std::result::Result<_, _>>()?
        }
        (format, bits) => {
            return Err(Error::UnsupportedFormat(format!(
                "{}: {bits}-bit {format:?} samples",
                path.display()
            )))
        }
    };
    if samples.is_empty() {
        return Err(invalid(format!("{}: no samples", path.display())));
    }
    Ok(AudioFile {
        path: path.to_path_buf(),
        signal: Signal::new(samples, spec.sample_rate)?,
        source_bit_depth: spec.bits_per_sample,
    })
}

/// Writes a mono WAV. Samples outside `[-1, 1]` are hard-clipped with a warning.
pub fn write_wav(path: impl AsRef<Path>, signal: &Signal, depth: BitDepth) -> Result<()> {
    let path = path.as_ref();
    let clipped = signal.samples().iter().filter(|s| s.abs() > 1.0).count();
    if clipped > 0 {
        log::warn!("{}: {clipped} samples outside [-1, 1] clipped", path.display());
    }
    let spec = WavSpec {
        channels: 1,
        sample_rate: signal.sample_rate(),
        bits_per_sample: depth.bits(),
        sample_format: if depth == BitDepth::Float32 {
            SampleFormat::Float
        } else {
            SampleFormat::Int
        },
    };
    let mut writer = WavWriter::create(path, spec)?;
    let samples = signal.samples().iter().map(|s| s.clamp(-1.0, 1.0));
    if depth == BitDepth::Float32 {
        for s in samples {
            writer.write_sample(s as f32)?;
        }
    } else {
        let scale = 2f64.powi(depth.bits() as i32 - 1);
        let (lo, hi) = (-scale, scale - 1.0);
        for s in samples {
            let code = (s * scale).round().clamp(lo, hi) as i32;
            match depth {
                BitDepth::Int8 => writer.write_sample(code as i8)?,
                BitDepth::Int16 => writer.write_sample(code as i16)?,
                _ => writer.write_sample(code)?,
            }
        }
    }
    writer.finalize()?;
    Ok(())
}

/// Scales the signal so its largest magnitude is exactly 1.
pub fn peak_normalize(signal: &Signal) -> Result<Signal> {
    let peak = signal.samples().iter().fold(0.0f64, |m, s| m.max(s.abs()));
    if peak == 0.0 {
        return Err(invalid("cannot peak-normalize an all-zero signal"));
    }
    let samples = signal.samples().iter().map(|s| s / peak).collect();
    Signal::new(samples, signal.sample_rate())
}
