//! Friis noise-figure and third-order-intercept cascades.

use super::stage::StageSpec;
use crate::error::{Error, Result};

/// Total noise figure in dB of stages in signal order.
pub fn cascade_noise_figure(stages: &[StageSpec]) -> Result<f64> {
    let first = stages.first().ok_or_else(|| Error::invalid("cascade needs at least one stage"))?;
    let mut total = first.noise_factor();
    let mut gain = first.gain_linear();
    for s in &stages[1..] {
        if !s.gain_db.is_finite() {
            return Err(Error::invalid(format!("stage {:?}: gain must be finite", s.name)));
        }
        total += (s.noise_factor() - 1.0) / gain;
        gain *= s.gain_linear();
    }
    Ok(10.0 * total.log10())
}

/// Input-referred IIP3 of the cascade in dBm. Every stage needs an IIP3;
/// an infinite IIP3 contributes nothing.
pub fn cascade_iip3(stages: &[StageSpec]) -> Result<f64> {
    if stages.is_empty() {
        return Err(Error::invalid("cascade needs at least one stage"));
    }
    let mut inv = 0.0;
    let mut gain = 1.0;
    for s in stages {
        let iip3 = s.iip3_dbm.ok_or_else(|| Error::invalid(format!("stage {:?} has no IIP3", s.name)))?;
        if !s.gain_db.is_finite() {
            return Err(Error::invalid(format!("stage {:?}: gain must be finite", s.name)));
        }
        inv += gain / crate::units::from_db(iip3 - 30.0);
        gain *= s.gain_linear();
    }
    Ok(10.0 * (1.0 / inv).log10() + 30.0)
}

/// Total linear power gain of the cascade.
pub fn cascade_gain(stages: &[StageSpec]) -> f64 {
    stages.iter().map(StageSpec::gain_linear).product()
}
