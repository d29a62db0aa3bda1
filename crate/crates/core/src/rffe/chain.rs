use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dft::{to_freq_domain, to_time_domain};
use super::frame::{complex_gaussian, generate_frame};
use super::quantizer::UniformQuantizer;
use super::stage::{add_stage_noise, apply_nonlinearity, StageSpec, DEFAULT_REF_IMPEDANCE_OHMS};
use crate::error::{Error, Result};
use crate::seed::{tag, Seed};
use crate::types::{FrequencyPlan, SnrPair};
use crate::units::KT;

/// Receiver chain: stages in signal order, then ideal AGC and an I/Q ADC pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RffeChainSpec {
    pub stages: Vec<StageSpec>,
    pub adc_bits: u32,
    /// ADC clip point in units of the per-component input RMS.
    pub adc_loading_sigma: f64,
    /// Mean power the AGC sets at the ADC input.
    pub agc_target: f64,
}

impl RffeChainSpec {
    pub fn new(stages: Vec<StageSpec>, adc_bits: u32, adc_loading_sigma: f64) -> Result<Self> {
        let spec = RffeChainSpec { stages, adc_bits, adc_loading_sigma, agc_target: 1.0 };
        spec.validate()?;
        Ok(spec)
    }

    /// A single noiseless, linear, unity-gain stage feeding a 14-bit ADC.
    pub fn near_identity() -> Self {
        RffeChainSpec {
            stages: vec![StageSpec::ideal("ideal")],
            adc_bits: 14,
            adc_loading_sigma: super::quantizer::mmse_loading(14).expect("14 bits is in range"),
            agc_target: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::invalid("receiver chain needs at least one stage"));
        }
        for s in &self.stages {
            s.validate()?;
        }
        if !(1..=16).contains(&self.adc_bits) {
            return Err(Error::invalid(format!("ADC resolution must be 1..=16 bits, got {}", self.adc_bits)));
        }
        if !(self.adc_loading_sigma > 0.0 && self.adc_loading_sigma.is_finite()) {
            return Err(Error::invalid("ADC loading factor must be positive"));
        }
        if !(self.agc_target > 0.0 && self.agc_target.is_finite()) {
            return Err(Error::invalid("AGC target must be positive"));
        }
        Ok(())
    }
}

/// Transmitted and received frequency-domain vectors for one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameBatch {
    pub tx_freq: Vec<Complex64>,
    pub rx_freq: Vec<Complex64>,
    pub plan: FrequencyPlan,
}

impl FrameBatch {
    /// `(x, x̂)` pairs on the signal bins.
    pub fn signal_pairs(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.plan.sig_bins().iter().map(|&k| (self.tx_freq[k], self.rx_freq[k]))
    }
}

/// Runs `n_frames` independent frames through the chain.
///
/// Per frame: draw symbols, unitary IFFT, add the reference thermal noise N0,
/// then for each stage add its input-referred excess noise and apply its
/// nonlinearity. The AGC then applies one gain to the whole batch so the
/// mean power is `agc_target`, and the ADC (full scale at
/// `adc_loading_sigma` times the per-component RMS of that batch) quantizes
/// before the unitary FFT.
///
/// The time-domain samples are carried in watts referenced to `kT·f_s` per
/// sample; the transmitted vector stays in units of N0.
pub fn simulate_chain(
    plan: &FrequencyPlan,
    chain: &RffeChainSpec,
    snr: SnrPair,
    n_frames: usize,
    seed: Seed,
) -> Result<Vec<FrameBatch>> {
    chain.validate()?;
    let analog: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..n_frames)
        .into_par_iter()
        .map(|i| analog_frame(plan, chain, snr, seed.derive(tag::FRAME, i as u64)))
        .collect::<Result<_>>()?;

    let total: f64 = analog.iter().map(|(_, u)| u.iter().map(|v| v.norm_sqr()).sum::<f64>()).sum();
    let mean_power = total / (n_frames * plan.n_fft()).max(1) as f64;
    let agc_gain = if mean_power > 0.0 && mean_power.is_finite() { (chain.agc_target / mean_power).sqrt() } else { 1.0 };
    let adc = (mean_power > 0.0).then(|| {
        let rms = (chain.agc_target / 2.0).sqrt();
        UniformQuantizer::new(chain.adc_bits, chain.adc_loading_sigma * rms)
    });

    analog
        .into_par_iter()
        .map(|(tx_freq, u)| {
            let q: Vec<Complex64> = u
                .iter()
                .map(|&v| {
                    let v = v * agc_gain;
                    match adc {
                        Some(adc) => Complex64::new(adc.apply(v.re), adc.apply(v.im)),
                        None => v,
                    }
                })
                .collect();
            Ok(FrameBatch { tx_freq, rx_freq: to_freq_domain(&q)?, plan: plan.clone() })
        })
        .collect()
}

/// Transmitted symbols and the analog chain output (before AGC) of one frame.
fn analog_frame(
    plan: &FrequencyPlan,
    chain: &RffeChainSpec,
    snr: SnrPair,
    seed: Seed,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let tx_freq = generate_frame(plan, snr, seed.derive(tag::FRAME_SYMBOLS, 0));
    let noise_floor = KT * plan.sample_rate_hz();
    let scale = noise_floor.sqrt();

    let mut rng = seed.derive(tag::THERMAL, 0).rng();
    let mut u: Vec<Complex64> =
        to_time_domain(&tx_freq)?.into_iter().map(|v| (v + complex_gaussian(&mut rng, 1.0)) * scale).collect();

    // Each stage's noise figure is referenced to a kT source at its own input.
    for (k, stage) in chain.stages.iter().enumerate() {
        u = add_stage_noise(&u, stage.nf_db, noise_floor, seed.derive(tag::STAGE_NOISE, k as u64))?;
        u = apply_nonlinearity(&u, stage.gain_db, stage.iip3_dbm.unwrap_or(f64::INFINITY), DEFAULT_REF_IMPEDANCE_OHMS);
    }
    Ok((tx_freq, u))
}
