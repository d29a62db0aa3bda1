//! A single memoryless receiver stage: input-referred noise then a compressive cubic.
//!
//! Samples are complex envelopes scaled so that `|u|²` is the instantaneous
//! power in watts. The cubic is specified on peak voltage across a reference
//! impedance; the impedance cancels once the output is scaled back to power
//! units, so any positive value yields the same result.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::frame::complex_gaussian;
use crate::error::{Error, Result};
use crate::seed::Seed;

pub const DEFAULT_REF_IMPEDANCE_OHMS: f64 = 50.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageSpec {
    pub name: String,
    pub gain_db: f64,
    pub nf_db: f64,
    /// Input-referred third-order intercept; `None` for a perfectly linear stage.
    pub iip3_dbm: Option<f64>,
    /// DC power draw, carried as metadata only.
    pub power_mw: Option<f64>,
}

impl StageSpec {
    pub fn new(name: impl Into<String>, gain_db: f64, nf_db: f64, iip3_dbm: Option<f64>) -> Result<Self> {
        let s = StageSpec { name: name.into(), gain_db, nf_db, iip3_dbm, power_mw: None };
        s.validate()?;
        Ok(s)
    }

    pub fn ideal(name: impl Into<String>) -> Self {
        StageSpec { name: name.into(), gain_db: 0.0, nf_db: 0.0, iip3_dbm: None, power_mw: None }
    }

    pub fn with_power_mw(mut self, mw: f64) -> Self {
        self.power_mw = Some(mw);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.gain_db.is_finite() {
            return Err(Error::invalid(format!("stage {:?}: gain must be finite", self.name)));
        }
        if !(self.nf_db >= 0.0 && self.nf_db.is_finite()) {
            return Err(Error::invalid(format!("stage {:?}: noise figure must be >= 0 dB", self.name)));
        }
        if let Some(p) = self.iip3_dbm {
            if p.is_nan() {
                return Err(Error::invalid(format!("stage {:?}: IIP3 is NaN", self.name)));
            }
        }
        Ok(())
    }

    pub fn gain_linear(&self) -> f64 {
        crate::units::from_db(self.gain_db)
    }

    pub fn noise_factor(&self) -> f64 {
        crate::units::from_db(self.nf_db)
    }
}

/// Memoryless compressive cubic `y = g·(u − c₃·u·|u|²)`.
///
/// `c₃ = 1/A²` with `A² = 2·P_IIP3·R` the IIP3 peak voltage squared, which is
/// the complex-envelope form of the passband cubic whose two-tone intercept
/// sits at `P_IIP3`. At `|u| = A` the cubic term equals the linear term.
/// Beyond `A/√3` the cubic would fold over, so the output magnitude is held
/// at its peak `g·2A/(3√3)` there.
///
/// An infinite `iip3_dbm` gives a purely linear gain.
pub fn apply_nonlinearity(u: &[Complex64], gain_db: f64, iip3_dbm: f64, ref_impedance: f64) -> Vec<Complex64> {
    let g = 10f64.powf(gain_db / 20.0);
    if iip3_dbm == f64::INFINITY {
        return u.iter().map(|&v| v * g).collect();
    }
    let to_volts = (2.0 * ref_impedance).sqrt();
    let p_iip3 = 10f64.powf((iip3_dbm - 30.0) / 10.0);
    let a2 = 2.0 * p_iip3 * ref_impedance;
    let a = a2.sqrt();
    let knee = a / 3f64.sqrt();
    let peak = 2.0 * a / (3.0 * 3f64.sqrt());
    u.iter()
        .map(|&s| {
            let v = s * to_volts;
            let r = v.norm();
            let y = if r >= knee { v * (peak / r) } else { v * (1.0 - r * r / a2) };
            y * (g / to_volts)
        })
        .collect()
}

/// Adds the stage's own noise, `(F − 1)·input_noise_power` per sample.
pub fn add_stage_noise(u: &[Complex64], nf_db: f64, input_noise_power: f64, seed: Seed) -> Result<Vec<Complex64>> {
    if !(nf_db >= 0.0) {
        return Err(Error::invalid(format!("noise figure must be >= 0 dB, got {nf_db}")));
    }
    if !(input_noise_power >= 0.0 && input_noise_power.is_finite()) {
        return Err(Error::invalid(format!("input noise power must be finite and >= 0, got {input_noise_power}")));
    }
    let excess = (10f64.powf(nf_db / 10.0) - 1.0) * input_noise_power;
    if excess == 0.0 {
        return Ok(u.to_vec());
    }
    let mut rng = seed.rng();
    Ok(u.iter().map(|&v| v + complex_gaussian(&mut rng, excess)).collect())
}
