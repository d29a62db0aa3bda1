//! Built-in receiver designs at 28 GHz and 140 GHz.
//!
//! Component values are the simulated LNA and mixer figures; each design
//! pairs one LNA with one mixer, a 4-bit (design 1) or 5-bit (design 2) ADC,
//! and carries the fitted saturation model used by the network simulation.

use crate::error::{Error, Result};
use crate::rffe::{mmse_loading, RffeChainSpec, StageSpec};
use crate::types::SaturationModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Band {
    Ghz28,
    Ghz140,
}

impl Band {
    pub fn carrier_ghz(self) -> f64 {
        match self {
            Band::Ghz28 => 28.0,
            Band::Ghz140 => 140.0,
        }
    }

    pub fn sample_rate_hz(self) -> f64 {
        match self {
            Band::Ghz28 => 491.52e6,
            Band::Ghz140 => 1966.08e6,
        }
    }

    pub fn bandwidth_hz(self) -> f64 {
        match self {
            Band::Ghz28 => 190.80e6,
            Band::Ghz140 => 380.16e6,
        }
    }

    pub fn gnb_array(self) -> (usize, usize) {
        match self {
            Band::Ghz28 => (8, 8),
            Band::Ghz140 => (16, 16),
        }
    }

    pub fn ue_array(self) -> (usize, usize) {
        match self {
            Band::Ghz28 => (4, 4),
            Band::Ghz140 => (8, 8),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    pub name: &'static str,
    pub band: Band,
    pub lna: StageSpec,
    pub mixer: StageSpec,
    pub adc_bits: u32,
    /// Fitted saturation model for the full array receiver.
    pub model: SaturationModel,
    pub rx_antennas: usize,
    /// System noise figure listed with the fitted model, in dB.
    pub nf_db: f64,
    pub power_mw: f64,
}

impl Design {
    pub fn chain(&self) -> RffeChainSpec {
        RffeChainSpec {
            stages: vec![self.lna.clone(), self.mixer.clone()],
            adc_bits: self.adc_bits,
            adc_loading_sigma: mmse_loading(self.adc_bits).expect("built-in ADC resolution is valid"),
            agc_target: 1.0,
        }
    }
}

pub const DESIGN_NAMES: [&str; 4] = ["28-d1", "28-d2", "140-d1", "140-d2"];

fn stage(name: &str, gain_db: f64, nf_db: f64, iip3_dbm: f64, power_mw: f64) -> StageSpec {
    StageSpec { name: name.into(), gain_db, nf_db, iip3_dbm: Some(iip3_dbm), power_mw: Some(power_mw) }
}

fn model(beta: f64, alpha1: f64, alpha2: f64) -> SaturationModel {
    SaturationModel::new(beta, alpha1, alpha2).expect("table constants are valid")
}

pub fn design(name: &str) -> Result<Design> {
    let d = match name {
        "28-d1" => Design {
            name: "28-d1",
            band: Band::Ghz28,
            lna: stage("lna1", 14.26, 2.13, -1.456, 8.91),
            mixer: stage("mixer1", 0.16, 9.039, -3.1, 4.838),
            adc_bits: 4,
            model: model(1.3865, 0.0090, 0.0058),
            rx_antennas: 16,
            nf_db: 2.78,
            power_mw: 411.0,
        },
        "28-d2" => Design {
            name: "28-d2",
            band: Band::Ghz28,
            lna: stage("lna2", 12.85, 2.53, 0.603, 5.34),
            mixer: stage("mixer2", 3.558, 7.542, 2.1, 7.03),
            adc_bits: 5,
            model: model(1.2725, 0.0024, 0.0017),
            rx_antennas: 16,
            nf_db: 3.08,
            power_mw: 404.0,
        },
        "140-d1" => Design {
            name: "140-d1",
            band: Band::Ghz140,
            lna: stage("lna2", 16.56, 7.48, -8.90, 15.90),
            mixer: stage("mixer1", -1.74, 21.53, -4.45, 5.00),
            adc_bits: 4,
            model: model(0.3099, 0.0021, 0.0014),
            rx_antennas: 64,
            nf_db: 9.40,
            power_mw: 1682.0,
        },
        "140-d2" => Design {
            name: "140-d2",
            band: Band::Ghz140,
            lna: stage("lna1", 11.13, 7.50, -9.15, 4.80),
            mixer: stage("mixer2", -0.52, 20.47, -3.88, 5.00),
            adc_bits: 5,
            model: model(0.1862, 0.0004, 0.0003),
            rx_antennas: 64,
            nf_db: 11.50,
            power_mw: 1355.0,
        },
        other => {
            return Err(Error::invalid(format!("unknown design {other:?}; known designs: {}", DESIGN_NAMES.join(", "))))
        }
    };
    Ok(d)
}

pub fn all_designs() -> Vec<Design> {
    DESIGN_NAMES.iter().map(|n| design(n).expect("built-in")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rffe::cascade_noise_figure;

    #[test]
    fn pairings_reproduce_listed_nf() {
        for d in all_designs() {
            let nf = cascade_noise_figure(&d.chain().stages).unwrap();
            assert!((nf - d.nf_db).abs() < 0.1, "{}: {nf} vs {}", d.name, d.nf_db);
        }
    }

    #[test]
    fn arrays_match_rx_antenna_count() {
        for d in all_designs() {
            let (r, c) = d.band.ue_array();
            assert_eq!(r * c, d.rx_antennas);
        }
    }

    #[test]
    fn unknown_design() {
        assert!(design("60-d1").is_err());
    }
}
