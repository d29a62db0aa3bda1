//! Uniform mid-rise ADC model applied independently to I and Q.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Clip point (in units of the per-component standard deviation) that
/// minimizes the mean squared error of a `bits`-bit uniform mid-rise quantizer
/// on Gaussian input. Index 0 is 1 bit.
const MMSE_LOADING: [f64; 16] = [
    1.5958, 1.9914, 2.3441, 2.6816, 3.0102, 3.3300, 3.6395, 3.9376, 4.2237, 4.4981, 4.7615, 5.0144, 5.2575,
    5.4922, 5.7186, 5.9396,
];

/// MMSE loading factor for Gaussian input, for 1 to 16 bits.
pub fn mmse_loading(bits: u32) -> Result<f64> {
    if !(1..=16).contains(&bits) {
        return Err(Error::invalid(format!("ADC resolution must be 1..=16 bits, got {bits}")));
    }
    Ok(MMSE_LOADING[bits as usize - 1])
}

/// Quantizes real and imaginary parts with `2^bits` levels.
///
/// Full scale is `loading_sigma` times the per-component RMS of the batch;
/// values beyond full scale land on the outermost level. An all-zero batch is
/// passed through unchanged.
pub fn quantize(u: &[Complex64], bits: u32, loading_sigma: f64) -> Result<Vec<Complex64>> {
    if !(1..=16).contains(&bits) {
        return Err(Error::invalid(format!("ADC resolution must be 1..=16 bits, got {bits}")));
    }
    if !(loading_sigma > 0.0 && loading_sigma.is_finite()) {
        return Err(Error::invalid(format!("loading factor must be positive, got {loading_sigma}")));
    }
    if u.is_empty() {
        return Ok(Vec::new());
    }
    let power: f64 = u.iter().map(|v| v.norm_sqr()).sum::<f64>() / (2 * u.len()) as f64;
    if !power.is_finite() {
        return Err(Error::invalid("ADC input has non-finite variance"));
    }
    if power == 0.0 {
        return Ok(u.to_vec());
    }
    let q = UniformQuantizer::new(bits, loading_sigma * power.sqrt());
    Ok(u.iter().map(|v| Complex64::new(q.apply(v.re), q.apply(v.im))).collect())
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct UniformQuantizer {
    step: f64,
    half_levels: f64,
}

impl UniformQuantizer {
    pub(crate) fn new(bits: u32, full_scale: f64) -> Self {
        let levels = (1u64 << bits) as f64;
        UniformQuantizer { step: 2.0 * full_scale / levels, half_levels: levels / 2.0 }
    }

    #[inline]
    pub(crate) fn apply(&self, x: f64) -> f64 {
        let idx = (x / self.step).floor().clamp(-self.half_levels, self.half_levels - 1.0);
        (idx + 0.5) * self.step
    }
}
