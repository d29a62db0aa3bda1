//! Urban-micro street-canyon large-scale channel: LOS probability, path loss
//! and log-normal shadowing spreads.

use crate::error::{Error, Result};
use crate::units::SPEED_OF_LIGHT;

/// Smallest 2D distance for which the path-loss model is defined.
pub const MIN_MODEL_DISTANCE_M: f64 = 10.0;
pub const SHADOW_SIGMA_LOS_DB: f64 = 4.0;
pub const SHADOW_SIGMA_NLOS_DB: f64 = 7.82;

pub fn los_probability(d2d_m: f64) -> f64 {
    if d2d_m <= 18.0 {
        1.0
    } else {
        18.0 / d2d_m + (-d2d_m / 36.0).exp() * (1.0 - 18.0 / d2d_m)
    }
}

/// Path loss in dB. Heights use an effective environment height of 1 m for
/// the breakpoint distance.
pub fn pathloss_umi(d2d_m: f64, d3d_m: f64, h_bs_m: f64, h_ut_m: f64, fc_ghz: f64, los: bool) -> Result<f64> {
    if !(d2d_m >= MIN_MODEL_DISTANCE_M) || !(d3d_m >= d2d_m) {
        return Err(Error::invalid(format!(
            "path loss needs d2d >= {MIN_MODEL_DISTANCE_M} m and d3d >= d2d, got d2d = {d2d_m}, d3d = {d3d_m}"
        )));
    }
    if !(fc_ghz > 0.0) {
        return Err(Error::invalid(format!("carrier frequency must be positive, got {fc_ghz} GHz")));
    }
    let pl_los = los_pathloss(d2d_m, d3d_m, h_bs_m, h_ut_m, fc_ghz);
    if los {
        return Ok(pl_los);
    }
    let pl_nlos = 35.3 * d3d_m.log10() + 22.4 + 21.3 * fc_ghz.log10() - 0.3 * (h_ut_m - 1.5);
    Ok(pl_los.max(pl_nlos))
}

fn los_pathloss(d2d: f64, d3d: f64, h_bs: f64, h_ut: f64, fc_ghz: f64) -> f64 {
    let breakpoint = 4.0 * (h_bs - 1.0).max(0.0) * (h_ut - 1.0).max(0.0) * fc_ghz * 1e9 / SPEED_OF_LIGHT;
    if d2d <= breakpoint || breakpoint == 0.0 {
        32.4 + 21.0 * d3d.log10() + 20.0 * fc_ghz.log10()
    } else {
        32.4 + 40.0 * d3d.log10() + 20.0 * fc_ghz.log10()
            - 9.5 * (breakpoint * breakpoint + (h_bs - h_ut).powi(2)).log10()
    }
}

pub fn shadow_sigma_db(los: bool) -> f64 {
    if los {
        SHADOW_SIGMA_LOS_DB
    } else {
        SHADOW_SIGMA_NLOS_DB
    }
}
