//! Quantizes a few samples and shows the consistency interval of each.
//!
//! ```bash
//! cargo run -p sparse-dequant --example quantize_and_bounds -- 3
//! ```

use sparse_dequant::quantizer::{feasibility_bounds, is_consistent, quantize, Signal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(3);
    let x = Signal::new(vec![-1.0, -0.61, -0.2, 0.0, 0.07, 0.33, 0.74, 1.0], 16_000)?;
    let q = quantize(&x, w)?;
    println!("w = {w}, Δ = {}", q.delta());
    println!("{:>8} {:>9} {:>19}", "x", "q", "interval");
    for ((x, q), (lo, hi)) in x.samples().iter().zip(q.samples()).zip(feasibility_bounds(&q)) {
        println!("{x:>8.3} {q:>9.4} [{lo:>8.4}, {hi:>8.4}]");
    }
    println!("original consistent with q: {}", is_consistent(&x, &q, 0.0)?);
    Ok(())
}
