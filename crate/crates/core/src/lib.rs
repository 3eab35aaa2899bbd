//! Restoration of uniformly quantized audio by convex ℓ1 minimization.
//!
//! Two signal models are supported:
//!
//! - **synthesis** (sparse): find coefficients `c` of minimal ℓ1 norm such that
//!   the synthesized signal `D c` stays within half a quantization step of every
//!   quantized sample. Solved with Douglas–Rachford splitting.
//! - **analysis** (cosparse): find a signal `x` inside the same box whose analysis
//!   coefficients `A x` have minimal ℓ1 norm. Solved with Chambolle–Pock.
//!
//! Both run over Parseval-tight frames (`D A = I`): a real-input discrete Gabor
//! transform and a windowed MDCT.
//!
//! ```no_run
//! use sparse_dequant::frames::{DgtFrame, TightFrame};
//! use sparse_dequant::{quantizer, solvers};
//!
//! let x = quantizer::Signal::new(vec![0.1; 4096], 16_000).unwrap();
//! let q = quantizer::quantize(&x, 4).unwrap();
//! let frame = DgtFrame::for_signal(q.len(), Default::default()).unwrap();
//! let cfg = solvers::SolverConfig::douglas_rachford(
//!     solvers::default_params(solvers::Algorithm::DouglasRachford, frame.kind(), 4).unwrap().value,
//! );
//! let run = solvers::solve_synthesis_dr(&q, &frame, &cfg).unwrap();
//! assert!(quantizer::is_consistent(&run.restored, &q, 1e-9).unwrap());
//! ```

pub mod audio_io;
pub mod bench;
mod error;
pub mod frames;
pub mod metrics;
pub mod proximal;
pub mod quantizer;
pub mod solvers;

pub use error::{Error, Result};
