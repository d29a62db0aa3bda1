//! Receiver front-end simulation: OFDM frames with an adjacent carrier,
//! memoryless nonlinear stages, ideal AGC and a low-resolution ADC.

mod cascade;
mod chain;
mod dft;
mod frame;
mod quantizer;
mod stage;

pub use cascade::{cascade_gain, cascade_iip3, cascade_noise_figure};
pub use chain::{simulate_chain, FrameBatch, RffeChainSpec};
pub use dft::{to_freq_domain, to_time_domain};
pub use frame::generate_frame;
pub use quantizer::{mmse_loading, quantize};
pub use stage::{add_stage_noise, apply_nonlinearity, StageSpec, DEFAULT_REF_IMPEDANCE_OHMS};
