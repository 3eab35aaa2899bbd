use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::frames::{FrameGeometry, FrameKind};
use crate::quantizer::{MAX_WORD_LENGTH, MIN_WORD_LENGTH};
use crate::solvers::{Model, DEFAULT_MAX_ITER, DEFAULT_MIN_ITER};

/// One sweep: every input file crossed with every word length, transform and
/// model.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// WAV files, or directories whose `*.wav` entries are all used.
    pub inputs: Vec<PathBuf>,
    pub out_dir: PathBuf,
    pub word_lengths: Vec<u32>,
    pub transforms: Vec<FrameKind>,
    pub models: Vec<Model>,
    /// Overrides the tabulated DR threshold for every cell.
    pub gamma: Option<f64>,
    /// Overrides the tabulated CP primal step for every cell.
    pub zeta: Option<f64>,
    pub max_iter: usize,
    pub min_iter: usize,
    pub emit_trace: bool,
    pub emit_audio: bool,
    pub jobs: usize,
    pub geometry: FrameGeometry,
    /// When set, inputs at any other rate are rejected.
    pub sample_rate: Option<u32>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            inputs: Vec::new(),
            out_dir: PathBuf::from("results"),
            word_lengths: (2..=8).collect(),
            transforms: vec![FrameKind::Dgt, FrameKind::Wmdct],
            models: vec![Model::Synthesis, Model::Analysis],
            gamma: None,
            zeta: None,
            max_iter: DEFAULT_MAX_ITER,
            min_iter: DEFAULT_MIN_ITER,
            emit_trace: false,
            emit_audio: false,
            jobs: 1,
            geometry: FrameGeometry::default(),
            sample_rate: None,
        }
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| config_err(format!("{key}: cannot parse '{value}'")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(config_err(format!("{key}: expected a boolean, got '{other}'"))),
    }
}

fn items(value: &str) -> impl Iterator<Item = &str> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
}

/// `"2,3,5"`, `"2-8"` or a mix such as `"2,4-6"`.
pub fn parse_word_lengths(value: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for item in items(value) {
        match item.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u32, u32) = (parse_num("bits", a)?, parse_num("bits", b)?);
                if a > b {
                    return Err(config_err(format!("bits: empty range '{item}'")));
                }
                out.extend(a..=b);
            }
            None => out.push(parse_num("bits", item)?),
        }
    }
    if out.is_empty() {
        return Err(config_err("bits: no word lengths given"));
    }
    if let Some(w) = out
        .iter()
        .find(|w| !(MIN_WORD_LENGTH..=MAX_WORD_LENGTH).contains(w))
    {
        return Err(config_err(format!(
            "bits: word length {w} outside {MIN_WORD_LENGTH}..={MAX_WORD_LENGTH}"
        )));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_either<T: std::str::FromStr<Err = Error> + Ord + Copy>(
    key: &str,
    value: &str,
    both: [T; 2],
) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for item in items(value) {
        if item.eq_ignore_ascii_case("both") || item.eq_ignore_ascii_case("all") {
            out.extend(both);
        } else {
            out.push(
                item.parse()
                    .map_err(|e: Error| config_err(format!("{key}: {e}")))?,
            );
        }
    }
    if out.is_empty() {
        return Err(config_err(format!("{key}: no values given")));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl ExperimentConfig {
    /// Applies one `key = value` setting. Keys match the long command-line flag
    /// names, with `-` or `_` accepted interchangeably.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        match key.as_str() {
            "input" | "inputs" => self.inputs = items(value).map(PathBuf::from).collect(),
            "out" | "out_dir" => self.out_dir = PathBuf::from(value.trim()),
            "bits" | "word_lengths" => self.word_lengths = parse_word_lengths(value)?,
            "transform" | "transforms" => {
                self.transforms = parse_either("transform", value, [FrameKind::Dgt, FrameKind::Wmdct])?
            }
            "model" | "models" => {
                self.models = parse_either("model", value, [Model::Synthesis, Model::Analysis])?
            }
            "gamma" => self.gamma = Some(parse_num(&key, value)?),
            "zeta" => self.zeta = Some(parse_num(&key, value)?),
            "max_iter" => self.max_iter = parse_num(&key, value)?,
            "min_iter" => self.min_iter = parse_num(&key, value)?,
            "trace" | "emit_trace" => self.emit_trace = parse_bool(&key, value)?,
            "emit_audio" => self.emit_audio = parse_bool(&key, value)?,
            "jobs" => self.jobs = parse_num(&key, value)?,
            "window_length" => self.geometry.window_length = parse_num(&key, value)?,
            "channels" => self.geometry.channels = parse_num(&key, value)?,
            "hop" => self.geometry.hop = parse_num(&key, value)?,
            "sample_rate" => self.sample_rate = Some(parse_num(&key, value)?),
            other => return Err(config_err(format!("unknown setting '{other}'"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` text. Blank lines and `#` comments are
    /// skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("line {}: expected 'key = value'", lineno + 1)))?;
            self.apply(key, value)
                .map_err(|e| config_err(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text =
            std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(config_err("no input files given"));
        }
        if self.jobs == 0 {
            return Err(config_err("jobs must be at least 1"));
        }
        if self.max_iter == 0 || self.min_iter > self.max_iter {
            return Err(config_err(format!(
                "iteration bounds min {} / max {} are inconsistent",
                self.min_iter, self.max_iter
            )));
        }
        for (name, v) in [("gamma", self.gamma), ("zeta", self.zeta)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(config_err(format!("{name} must be positive, got {v}")));
                }
            }
        }
        if self.word_lengths.is_empty() || self.transforms.is_empty() || self.models.is_empty() {
            return Err(config_err("empty experiment grid"));
        }
        Ok(())
    }

    /// Input files with directories expanded to their sorted `*.wav` entries.
    pub fn input_files(&self) -> Result<Vec<PathBuf>> {
        let mut files = Vec::new();
        for input in &self.inputs {
            if input.is_dir() {
                let mut found: Vec<PathBuf> = std::fs::read_dir(input)?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case("wav")))
                    .collect();
                found.sort();
                files.extend(found);
            } else {
                files.push(input.clone());
            }
        }
        if files.is_empty() {
            return Err(config_err("inputs contain no WAV files"));
        }
        Ok(files)
    }
}
