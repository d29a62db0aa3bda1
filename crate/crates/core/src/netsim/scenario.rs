use serde::{Deserialize, Serialize};

use super::antenna::ArrayShape;
use super::channel::MIN_MODEL_DISTANCE_M;
use crate::designs::{Band, Design};
use crate::error::{Error, Result};
use crate::types::SaturationModel;

/// Deployment, radio and receiver-model parameters for one network study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkScenario {
    /// Side of the square wrap-around area.
    pub area_m: f64,
    pub isd_m: f64,
    pub min_dist_m: f64,
    pub fc_ghz: f64,
    pub bw_hz: f64,
    pub tx_power_dbm: f64,
    pub gnb_height_range_m: (f64, f64),
    pub ue_height_m: f64,
    /// Boresight elevation of every gNB sector; negative points down.
    pub downtilt_deg: f64,
    pub n_sectors: usize,
    pub hpbw_deg: f64,
    pub gnb_array: ArrayShape,
    pub ue_array: ArrayShape,
    /// Full-distortion receiver model; the other two modes are derived from it.
    pub model: SaturationModel,
    /// Receive antenna count the model was fitted for.
    pub model_rx_antennas: usize,
    /// UE candidates tried per sector before giving up on filling every sector.
    pub fill_cap_per_sector: usize,
    /// Also add same-carrier interference (after RX beamforming) linearly to
    /// the SINR denominator. Off by default.
    pub linear_cochannel_interference: bool,
}

impl NetworkScenario {
    pub fn for_design(design: &Design) -> Self {
        let band = design.band;
        NetworkScenario {
            area_m: 1000.0,
            isd_m: 200.0,
            min_dist_m: 10.0,
            fc_ghz: band.carrier_ghz(),
            bw_hz: band.bandwidth_hz(),
            tx_power_dbm: 30.0,
            gnb_height_range_m: (2.0, 5.0),
            ue_height_m: 1.6,
            downtilt_deg: -12.0,
            n_sectors: 3,
            hpbw_deg: 65.0,
            gnb_array: band.gnb_array().into(),
            ue_array: band.ue_array().into(),
            model: design.model,
            model_rx_antennas: design.rx_antennas,
            fill_cap_per_sector: 50,
            linear_cochannel_interference: false,
        }
    }

    pub fn for_band(band: Band, model: SaturationModel) -> Self {
        let d = crate::designs::all_designs().into_iter().find(|d| d.band == band).expect("every band has a design");
        NetworkScenario { model, ..Self::for_design(&d) }
    }

    /// gNB density `4/(π·ISD²)` per m².
    pub fn gnb_density(&self) -> f64 {
        4.0 / (std::f64::consts::PI * self.isd_m * self.isd_m)
    }

    pub fn mean_gnb_count(&self) -> f64 {
        self.gnb_density() * self.area_m * self.area_m
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("area_m", self.area_m),
            ("isd_m", self.isd_m),
            ("fc_ghz", self.fc_ghz),
            ("bw_hz", self.bw_hz),
            ("ue_height_m", self.ue_height_m),
            ("hpbw_deg", self.hpbw_deg),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.min_dist_m >= MIN_MODEL_DISTANCE_M) {
            return Err(Error::invalid(format!(
                "min_dist_m must be at least {MIN_MODEL_DISTANCE_M} m for the path-loss model, got {}",
                self.min_dist_m
            )));
        }
        if !self.tx_power_dbm.is_finite() || !self.downtilt_deg.is_finite() {
            return Err(Error::invalid("tx_power_dbm and downtilt_deg must be finite"));
        }
        let (lo, hi) = self.gnb_height_range_m;
        if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
            return Err(Error::invalid(format!("gNB height range ({lo}, {hi}) is not a positive interval")));
        }
        if self.n_sectors == 0 {
            return Err(Error::invalid("n_sectors must be at least 1"));
        }
        if self.gnb_array.elements() == 0 || self.ue_array.elements() == 0 {
            return Err(Error::invalid("antenna arrays need at least one element"));
        }
        if self.ue_array.elements() != self.model_rx_antennas {
            return Err(Error::invalid(format!(
                "UE array has {} elements but the receiver model was fitted for {} antennas",
                self.ue_array.elements(),
                self.model_rx_antennas
            )));
        }
        if self.fill_cap_per_sector == 0 {
            return Err(Error::invalid("fill_cap_per_sector must be at least 1"));
        }
        Ok(())
    }
}
