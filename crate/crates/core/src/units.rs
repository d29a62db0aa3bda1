//! Decibel arithmetic and the thermal-noise reference.

use crate::error::{Error, Result};

/// Boltzmann constant in J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Reference temperature for the thermal noise floor N0 = kT.
pub const REFERENCE_TEMPERATURE_K: f64 = 290.0;

/// Thermal noise power spectral density kT at 290 K, in W/Hz.
pub const KT: f64 = BOLTZMANN * REFERENCE_TEMPERATURE_K;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub fn db_to_linear(x_db: f64) -> Result<f64> {
    if !x_db.is_finite() {
        return Err(Error::invalid(format!("decibel value must be finite, got {x_db}")));
    }
    Ok(10f64.powf(x_db / 10.0))
}

pub fn linear_to_db(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("cannot take dB of non-positive ratio {x}")));
    }
    Ok(10.0 * x.log10())
}

pub fn dbm_to_watts(p_dbm: f64) -> Result<f64> {
    if !p_dbm.is_finite() {
        return Err(Error::invalid(format!("dBm value must be finite, got {p_dbm}")));
    }
    Ok(10f64.powf((p_dbm - 30.0) / 10.0))
}

pub fn watts_to_dbm(p_w: f64) -> Result<f64> {
    Ok(linear_to_db(p_w)? + 30.0)
}

/// Thermal noise power kT·B in watts over `bandwidth_hz`.
pub fn thermal_noise_watts(bandwidth_hz: f64) -> f64 {
    KT * bandwidth_hz
}

/// `10^(x/10)` for values already known to be finite, e.g. table constants.
#[inline]
pub(crate) fn from_db(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}
