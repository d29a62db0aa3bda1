//! Per-UE link budgets and the saturation-model SINR.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::antenna::{beamforming_gain, element_gain_local_db};
use super::drop::{link_geometry, sector_boresight, Drop, LinkGeometry, SectorId};
use super::geometry::{to_local, Direction};
use super::scenario::NetworkScenario;
use crate::error::Result;
use crate::types::SaturationModel;
use crate::units::{dbm_to_watts, from_db as db_to_linear, KT};

/// Received energies per sample at one UE, in watts.
///
/// Distortion is spatially white, so the totals carry TX gains and the RX
/// element gain but no RX beamforming gain. Only `rx_sig_energy` includes the
/// RX array gain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    /// Serving energy after RX beamforming.
    pub rx_sig_energy: f64,
    /// Serving energy at one RX element; the serving term inside `rx_tot_same_carrier`.
    pub rx_sig_energy_element: f64,
    pub rx_tot_same_carrier: f64,
    pub rx_tot_adjacent: f64,
    /// Non-serving same-carrier energy after RX beamforming.
    pub rx_int_linear: f64,
    pub noise_energy: f64,
}

impl LinkBudget {
    /// Same-carrier energy from non-serving sectors at one element.
    pub fn rx_int_same_carrier(&self) -> f64 {
        (self.rx_tot_same_carrier - self.rx_sig_energy_element).max(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SinrMode {
    Full,
    NoAci,
    NoDistortion,
}

impl SinrMode {
    pub const ALL: [SinrMode; 3] = [SinrMode::Full, SinrMode::NoAci, SinrMode::NoDistortion];

    pub fn name(self) -> &'static str {
        match self {
            SinrMode::Full => "full",
            SinrMode::NoAci => "no_aci",
            SinrMode::NoDistortion => "no_distortion",
        }
    }

    pub fn apply(self, model: &SaturationModel) -> SaturationModel {
        match self {
            SinrMode::Full => *model,
            SinrMode::NoAci => model.without_aci(),
            SinrMode::NoDistortion => model.without_distortion(),
        }
    }
}

/// `β·E_sig / (E_kT + α₁·E_tot^a + α₂·E_tot^b)`.
pub fn compute_sinr(budget: &LinkBudget, model: &SaturationModel, mode: SinrMode) -> f64 {
    compute_sinr_with(budget, model, mode, false)
}

/// [`compute_sinr`], optionally adding non-serving same-carrier energy (after
/// RX beamforming) to the denominator as undistorted interference.
pub fn compute_sinr_with(budget: &LinkBudget, model: &SaturationModel, mode: SinrMode, linear_cochannel: bool) -> f64 {
    let m = mode.apply(model);
    let mut den = budget.noise_energy + m.alpha1() * budget.rx_tot_same_carrier + m.alpha2() * budget.rx_tot_adjacent;
    if linear_cochannel {
        den += budget.rx_int_linear;
    }
    m.beta() * budget.rx_sig_energy / den
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UeLink {
    /// Index into `Drop::ues`.
    pub ue: usize,
    pub serving: SectorId,
    pub budget: LinkBudget,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct LinkBudgets {
    pub links: Vec<UeLink>,
    /// UEs with no gNB on their carrier.
    pub excluded: usize,
}

/// Link budgets for every UE in `drop`.
///
/// Each UE is served by the same-carrier sector with the largest serving
/// energy. A sector transmits only if it serves some UE, and then beams at the
/// lowest-indexed such UE.
pub fn build_link_budgets(drop: &Drop, scn: &NetworkScenario) -> Result<LinkBudgets> {
    let p_tx = dbm_to_watts(scn.tx_power_dbm)?;
    let n_tx = scn.gnb_array.elements() as f64;
    let n_rx = scn.ue_array.elements() as f64;
    let g_rx_max = db_to_linear(element_gain_local_db(Direction { az_deg: 0.0, el_deg: 0.0 }, scn.hpbw_deg));
    let noise_energy = KT * scn.bw_hz;

    let geometry: Vec<Vec<LinkGeometry>> = drop
        .ues
        .iter()
        .map(|ue| (0..drop.gnbs.len()).map(|g| link_geometry(scn, &drop.gnbs, g, ue)).collect())
        .collect::<Result<_>>()?;
    let tx_element = |id: SectorId, departure: Direction| {
        let gnb = &drop.gnbs[id.gnb];
        db_to_linear(element_gain_local_db(to_local(departure, sector_boresight(scn, gnb, id.sector)), scn.hpbw_deg))
    };

    // Serving sector per UE.
    let mut serving: Vec<Option<SectorId>> = Vec::with_capacity(drop.ues.len());
    for (u, ue) in drop.ues.iter().enumerate() {
        let mut best: Option<(SectorId, f64)> = None;
        for (g, gnb) in drop.gnbs.iter().enumerate() {
            if gnb.carrier != ue.carrier {
                continue;
            }
            let link = &geometry[u][g];
            for sector in 0..gnb.sector_azimuths_deg.len() {
                let id = SectorId { gnb: g, sector };
                let e = p_tx * tx_element(id, link.departure) * n_tx * link.path_gain * g_rx_max * n_rx;
                if best.is_none_or(|(_, b)| e > b) {
                    best = Some((id, e));
                }
            }
        }
        serving.push(best.map(|(id, _)| id));
    }

    // Active sectors and the UE each one beams at.
    let mut active: BTreeMap<SectorId, usize> = BTreeMap::new();
    for (u, s) in serving.iter().enumerate() {
        if let Some(id) = s {
            active.entry(*id).or_insert(u);
        }
    }

    let mut out = LinkBudgets::default();
    for (u, ue) in drop.ues.iter().enumerate() {
        let Some(own) = serving[u] else {
            out.excluded += 1;
            continue;
        };
        let ue_boresight = geometry[u][own.gnb].arrival;
        let mut b = LinkBudget {
            rx_sig_energy: 0.0,
            rx_sig_energy_element: 0.0,
            rx_tot_same_carrier: 0.0,
            rx_tot_adjacent: 0.0,
            rx_int_linear: 0.0,
            noise_energy,
        };
        for (&id, &target_ue) in &active {
            let gnb = &drop.gnbs[id.gnb];
            let link = &geometry[u][id.gnb];
            let boresight = sector_boresight(scn, gnb, id.sector);
            let steer = to_local(geometry[target_ue][id.gnb].departure, boresight);
            let toward = to_local(link.departure, boresight);
            let g_bf = if target_ue == u { n_tx } else { beamforming_gain(scn.gnb_array, steer, toward) };
            let rx_local = to_local(link.arrival, ue_boresight);
            let g_rx = db_to_linear(element_gain_local_db(rx_local, scn.hpbw_deg));
            let e = p_tx * tx_element(id, link.departure) * g_bf * link.path_gain * g_rx;
            if gnb.carrier == ue.carrier {
                b.rx_tot_same_carrier += e;
                if id == own {
                    b.rx_sig_energy_element = e;
                } else {
                    let origin = Direction { az_deg: 0.0, el_deg: 0.0 };
                    b.rx_int_linear += e * beamforming_gain(scn.ue_array, origin, rx_local);
                }
            } else {
                b.rx_tot_adjacent += e;
            }
        }
        b.rx_sig_energy = b.rx_sig_energy_element * n_rx;
        out.links.push(UeLink { ue: u, serving: own, budget: b });
    }
    Ok(out)
}
