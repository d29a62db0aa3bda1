use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{SaturationModel, SnrPair};

/// One link-level operating point and its measured output SNR (all linear).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrMeasurement {
    pub gamma_sig: f64,
    pub gamma_int: f64,
    pub gamma_out: f64,
}

impl SnrMeasurement {
    pub fn new(gamma_sig: f64, gamma_int: f64, gamma_out: f64) -> Result<Self> {
        for (name, v) in [("gamma_sig", gamma_sig), ("gamma_int", gamma_int), ("gamma_out", gamma_out)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be finite and non-negative, got {v}")));
            }
        }
        Ok(SnrMeasurement { gamma_sig, gamma_int, gamma_out })
    }

    pub fn snr(&self) -> SnrPair {
        SnrPair::new(self.gamma_sig, self.gamma_int).expect("validated on construction")
    }
}

/// `β·γ_sig / (1 + α₁·γ_sig + α₂·γ_int)`.
pub fn model_predict(model: &SaturationModel, snr: SnrPair) -> f64 {
    let g = snr.gamma_sig();
    model.beta() * g / (1.0 + model.alpha1() * g + model.alpha2() * snr.gamma_int())
}

/// Starting point `β = 1/F`, `α₁ = α₂ = 1/(γ_sat·F)` from the system noise
/// factor and the saturation SNR.
pub fn heuristic_init(noise_factor: f64, gamma_sat: f64) -> Result<SaturationModel> {
    if !(noise_factor >= 1.0 && noise_factor.is_finite()) {
        return Err(Error::invalid(format!("noise factor must be >= 1, got {noise_factor}")));
    }
    if !(gamma_sat > 0.0 && gamma_sat.is_finite()) {
        return Err(Error::invalid(format!("saturation SNR must be positive, got {gamma_sat}")));
    }
    let alpha = 1.0 / (gamma_sat * noise_factor);
    SaturationModel::new(1.0 / noise_factor, alpha, alpha)
}

/// Heuristic start when the saturation SNR is not known: take the largest
/// measured output SNR as the ceiling.
pub fn heuristic_init_from(measurements: &[SnrMeasurement], noise_factor: f64) -> Result<SaturationModel> {
    let gamma_sat = measurements.iter().map(|m| m.gamma_out).fold(0.0, f64::max);
    heuristic_init(noise_factor, gamma_sat)
}
