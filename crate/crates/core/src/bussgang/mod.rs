//! Bussgang linearization of the front-end, output SNR, the saturation model
//! and its least-squares fit, and achievable-rate bounds.

mod capacity;
mod estimate;
mod fit;
mod model;

pub use capacity::capacity_lower_bound;
pub use estimate::{estimate_bussgang, output_snr, BussgangEstimate, OutputSnr};
pub use fit::{check_identifiable, fit_model, FitReport, MAX_ITERATIONS};
pub use model::{heuristic_init, heuristic_init_from, model_predict, SnrMeasurement};

use crate::error::Result;
use crate::rffe::FrameBatch;

/// Bussgang estimate pooled over the signal bins of every frame.
pub fn estimate_from_frames(frames: &[FrameBatch]) -> Result<BussgangEstimate> {
    let pairs: Vec<_> = frames.iter().flat_map(|f| f.signal_pairs()).collect();
    estimate_bussgang(&pairs)
}
