//! Simulation and modeling of low-power millimeter-wave receivers under
//! adjacent-carrier interference.
//!
//! The crate is organized bottom-up:
//!
//! * [`units`], [`types`] and [`seed`] hold dB arithmetic, shared domain
//!   types and reproducible random streams.
//! * [`rffe`] pushes OFDM frames with an adjacent carrier through a
//!   nonlinear, noisy receiver chain and a low-resolution ADC.
//! * [`bussgang`] linearizes the chain output, measures output SNR and fits
//!   the three-parameter saturation model `β·γ_sig / (1 + α₁·γ_sig + α₂·γ_int)`.
//! * [`netsim`] drops a two-carrier cellular network and evaluates per-UE
//!   SINR with the fitted model.
//!
//! The `book/` directory next to the workspace walks through each layer;
//! its code listings are compiled and run as doc-tests of this crate.

pub mod bussgang;
pub mod designs;
pub mod error;
pub mod netsim;
pub mod rffe;
pub mod seed;
pub mod types;
pub mod units;

pub use error::{Error, Result};
pub use seed::Seed;
pub use types::{FrequencyPlan, SaturationModel, SnrPair};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/front-end.md")]
    mod front_end {}
    #[doc = include_str!("../../../book/src/bussgang.md")]
    mod bussgang {}
    #[doc = include_str!("../../../book/src/model-fit.md")]
    mod model_fit {}
    #[doc = include_str!("../../../book/src/network.md")]
    mod network {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
