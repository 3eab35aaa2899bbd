//! Checks Parseval tightness, reconstruction and operator norm of both frames
//! at the default geometry.
//!
//! ```bash
//! cargo run -p sparse-dequant --release --example frame_tightness -- 16384
//! ```

use sparse_dequant::frames::{estimate_operator_norm, DgtFrame, FrameGeometry, TightFrame, WmdctFrame};

fn report<F: TightFrame>(frame: &F, x: &[f64]) -> sparse_dequant::Result<()> {
    let c = frame.analyze(x)?;
    let back = frame.synthesize(&c)?;
    let energy: f64 = x.iter().map(|v| v * v).sum();
    let err: f64 = back
        .iter()
        .zip(x)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt();
    println!(
        "{}: {} coefficients, |‖Ax‖² - ‖x‖²|/‖x‖² = {:.2e}, ‖DAx - x‖/‖x‖ = {:.2e}, ‖A‖ ≈ {:.9}",
        frame.kind(),
        frame.coeff_len(),
        (c.norm().powi(2) - energy).abs() / energy,
        err / energy.sqrt(),
        estimate_operator_norm(frame, 10)?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(16384);
    let geom = FrameGeometry::default();
    let dgt = DgtFrame::for_signal(n, geom)?;
    let wmdct = WmdctFrame::for_signal(n, geom)?;
    let x: Vec<f64> = (0..dgt.signal_len())
        .map(|i| ((i * 7919) % 1013) as f64 / 506.5 - 1.0)
        .collect();
    report(&dgt, &x)?;
    let x: Vec<f64> = (0..wmdct.signal_len())
        .map(|i| ((i * 7919) % 1013) as f64 / 506.5 - 1.0)
        .collect();
    report(&wmdct, &x)?;
    Ok(())
}
