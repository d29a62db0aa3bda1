//! Domain types shared by the front-end, Bussgang and network modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Split of the `n_fft` frequency bins into desired-signal and interference bins.
///
/// The two bin sets partition `0..n_fft`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyPlan {
    n_fft: usize,
    sig_bins: Vec<usize>,
    int_bins: Vec<usize>,
    sample_rate_hz: f64,
}

impl FrequencyPlan {
    /// Builds a plan from the signal bins; the interference bins are their complement.
    pub fn new(n_fft: usize, sig_bins: Vec<usize>, sample_rate_hz: f64) -> Result<Self> {
        if n_fft == 0 {
            return Err(Error::invalid("n_fft must be positive"));
        }
        if !(sample_rate_hz > 0.0 && sample_rate_hz.is_finite()) {
            return Err(Error::invalid(format!("sample rate must be positive, got {sample_rate_hz}")));
        }
        let mut is_sig = vec![false; n_fft];
        for &k in &sig_bins {
            if k >= n_fft {
                return Err(Error::invalid(format!("signal bin {k} outside 0..{n_fft}")));
            }
            if is_sig[k] {
                return Err(Error::invalid(format!("signal bin {k} listed twice")));
            }
            is_sig[k] = true;
        }
        let mut sig_bins = sig_bins;
        sig_bins.sort_unstable();
        let int_bins = (0..n_fft).filter(|&k| !is_sig[k]).collect();
        Ok(FrequencyPlan { n_fft, sig_bins, int_bins, sample_rate_hz })
    }

    /// Lower `n_sig` bins carry the signal, the rest carry the adjacent carrier.
    pub fn contiguous(n_fft: usize, n_sig: usize, sample_rate_hz: f64) -> Result<Self> {
        if n_sig > n_fft {
            return Err(Error::invalid(format!("{n_sig} signal bins exceed n_fft = {n_fft}")));
        }
        Self::new(n_fft, (0..n_sig).collect(), sample_rate_hz)
    }

    /// 1024 bins split into two equal contiguous halves.
    pub fn default_for_rate(sample_rate_hz: f64) -> Result<Self> {
        Self::contiguous(1024, 512, sample_rate_hz)
    }

    pub fn n_fft(&self) -> usize {
        self.n_fft
    }

    pub fn sig_bins(&self) -> &[usize] {
        &self.sig_bins
    }

    pub fn int_bins(&self) -> &[usize] {
        &self.int_bins
    }

    pub fn n_sig(&self) -> usize {
        self.sig_bins.len()
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }
}

/// Per-bin signal-to-noise and interference-to-noise ratios, both linear.
///
/// `gamma_int` is the mean interference energy per interference bin relative to N0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrPair {
    gamma_sig: f64,
    gamma_int: f64,
}

impl SnrPair {
    pub fn new(gamma_sig: f64, gamma_int: f64) -> Result<Self> {
        for (name, v) in [("gamma_sig", gamma_sig), ("gamma_int", gamma_int)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be finite and non-negative, got {v}")));
            }
        }
        Ok(SnrPair { gamma_sig, gamma_int })
    }

    /// Both ratios in dB; `f64::NEG_INFINITY` means "absent".
    pub fn from_db(gamma_sig_db: f64, gamma_int_db: f64) -> Result<Self> {
        let lin = |x: f64| if x == f64::NEG_INFINITY { 0.0 } else { 10f64.powf(x / 10.0) };
        if gamma_sig_db.is_nan() || gamma_int_db.is_nan() {
            return Err(Error::invalid("SNR in dB must not be NaN"));
        }
        Self::new(lin(gamma_sig_db), lin(gamma_int_db))
    }

    pub fn gamma_sig(&self) -> f64 {
        self.gamma_sig
    }

    pub fn gamma_int(&self) -> f64 {
        self.gamma_int
    }
}

/// The three-parameter saturation model
/// `γ̂_out = β·γ_sig / (1 + α₁·γ_sig + α₂·γ_int)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaturationModel {
    beta: f64,
    alpha1: f64,
    alpha2: f64,
}

impl SaturationModel {
    pub fn new(beta: f64, alpha1: f64, alpha2: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::invalid(format!("beta must be positive, got {beta}")));
        }
        if !(alpha1 >= 0.0 && alpha1.is_finite()) {
            return Err(Error::invalid(format!("alpha1 must be non-negative, got {alpha1}")));
        }
        if !(alpha2 >= 0.0 && alpha2.is_finite()) {
            return Err(Error::invalid(format!("alpha2 must be non-negative, got {alpha2}")));
        }
        Ok(SaturationModel { beta, alpha1, alpha2 })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    /// Output SNR ceiling `β/α₁`, infinite when `α₁ = 0`.
    pub fn saturation_snr(&self) -> f64 {
        if self.alpha1 == 0.0 {
            f64::INFINITY
        } else {
            self.beta / self.alpha1
        }
    }

    /// Same model with adjacent-carrier distortion removed (`α₂ = 0`).
    pub fn without_aci(&self) -> Self {
        SaturationModel { alpha2: 0.0, ..*self }
    }

    /// Same model with all distortion removed (`α₁ = α₂ = 0`).
    pub fn without_distortion(&self) -> Self {
        SaturationModel { alpha1: 0.0, alpha2: 0.0, ..*self }
    }
}
