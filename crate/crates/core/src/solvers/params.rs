use super::Algorithm;
use crate::error::{invalid, Result};
use crate::frames::FrameKind;
use crate::quantizer::{MAX_WORD_LENGTH, MIN_WORD_LENGTH};

/// Tabulated word lengths, 2 through 8 bits.
const TABLE_WORD_LENGTHS: std::ops::RangeInclusive<u32> = 2..=8;

const DR_DGT: [f64; 7] = [0.0073, 0.0040, 0.0015, 0.00025, 0.000049, 0.000017, 0.0000066];
const DR_WMDCT: [f64; 7] = [0.0204, 0.0123, 0.0055, 0.00035, 0.000084, 0.000028, 0.0000099];
const CP_DGT: [f64; 7] = [0.0055, 0.0031, 0.0013, 0.00017, 0.000041, 0.000015, 0.0000057];
const CP_WMDCT: [f64; 7] = [0.0213, 0.0110, 0.0053, 0.00023, 0.000066, 0.000022, 0.0000075];

/// A step parameter (`γ` for DR, `ζ` for CP).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamChoice {
    pub value: f64,
    /// False when the word length lies beyond the table and the value was
    /// extrapolated.
    pub from_table: bool,
}

/// Tuned `γ` (DR) or `ζ` (CP) for a transform and word length.
///
/// Word lengths 9..=16 are extrapolated log-linearly from the 7- and 8-bit
/// entries.
pub fn default_params(algorithm: Algorithm, kind: FrameKind, word_length: u32) -> Result<ParamChoice> {
    if !(MIN_WORD_LENGTH..=MAX_WORD_LENGTH).contains(&word_length) {
        return Err(invalid(format!(
            "word length {word_length} has no parameter entry"
        )));
    }
    let row = match (algorithm, kind) {
        (Algorithm::DouglasRachford, FrameKind::Dgt) => &DR_DGT,
        (Algorithm::DouglasRachford, FrameKind::Wmdct) => &DR_WMDCT,
        (Algorithm::ChambollePock, FrameKind::Dgt) => &CP_DGT,
        (Algorithm::ChambollePock, FrameKind::Wmdct) => &CP_WMDCT,
    };
    if TABLE_WORD_LENGTHS.contains(&word_length) {
        return Ok(ParamChoice {
            value: row[(word_length - 2) as usize],
            from_table: true,
        });
    }
    let (last, prev) = (row[6], row[5]);
    let steps = (word_length - *TABLE_WORD_LENGTHS.end()) as f64;
    Ok(ParamChoice {
        value: last * (last / prev).powf(steps),
        from_table: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        let p = default_params(Algorithm::DouglasRachford, FrameKind::Dgt, 2).unwrap();
        assert_eq!(
            p,
            ParamChoice {
                value: 0.0073,
                from_table: true
            }
        );
        assert_eq!(
            default_params(Algorithm::ChambollePock, FrameKind::Dgt, 5)
                .unwrap()
                .value,
            0.00017
        );
        assert_eq!(
            default_params(Algorithm::DouglasRachford, FrameKind::Wmdct, 8)
                .unwrap()
                .value,
            0.0000099
        );
        assert_eq!(
            default_params(Algorithm::ChambollePock, FrameKind::Wmdct, 3)
                .unwrap()
                .value,
            0.0110
        );
    }

    #[test]
    fn extrapolation_beyond_table() {
        let p = default_params(Algorithm::DouglasRachford, FrameKind::Dgt, 9).unwrap();
        assert!(!p.from_table);
        let expected = 0.0000066 * (0.0000066 / 0.000017);
        assert!((p.value - expected).abs() < 1e-18);
        let p16 = default_params(Algorithm::ChambollePock, FrameKind::Wmdct, 16).unwrap();
        assert!(p16.value > 0.0 && p16.value < p.value);
        assert!(default_params(Algorithm::ChambollePock, FrameKind::Dgt, 1).is_err());
        assert!(default_params(Algorithm::ChambollePock, FrameKind::Dgt, 17).is_err());
    }
}
