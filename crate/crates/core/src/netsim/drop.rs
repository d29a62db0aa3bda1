//! Random deployments: HPPP gNB sites and one active UE per sector.

use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use super::antenna::element_gain_local_db;
use super::channel::{los_probability, pathloss_umi, shadow_sigma_db};
use super::geometry::{to_local, wraparound_delta, wraparound_distance, Direction, Point};
use super::scenario::NetworkScenario;
use crate::error::{Error, Result};
use crate::seed::{tag, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Carrier {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gnb {
    pub position: Point,
    pub height_m: f64,
    pub carrier: Carrier,
    /// Boresight azimuth of each sector, degrees.
    pub sector_azimuths_deg: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SectorId {
    pub gnb: usize,
    pub sector: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ue {
    pub position: Point,
    pub carrier: Carrier,
    /// Root of this UE's per-link LOS and shadowing draws.
    pub link_seed: Seed,
}

/// One network snapshot. Every UE is the single active user of one sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Drop {
    pub gnbs: Vec<Gnb>,
    pub ues: Vec<Ue>,
    /// Sectors no candidate UE associated with before the fill cap was hit.
    pub unfilled_sectors: usize,
}

impl Drop {
    pub fn generate(scn: &NetworkScenario, seed: Seed) -> Result<Drop> {
        let gnbs = drop_gnbs(scn, seed.derive(tag::GNB, 0));
        if gnbs.is_empty() {
            return Ok(Drop { gnbs, ues: Vec::new(), unfilled_sectors: 0 });
        }
        let sel = drop_ues(scn, &gnbs, seed.derive(tag::UE, 0))?;
        Ok(Drop { gnbs, ues: sel.ues, unfilled_sectors: sel.unfilled_sectors })
    }
}

/// HPPP deployment on the wrap-around square.
pub fn drop_gnbs(scn: &NetworkScenario, seed: Seed) -> Vec<Gnb> {
    let mut rng = seed.rng();
    let mean = scn.mean_gnb_count();
    let count = if mean > 0.0 { Poisson::new(mean).map(|p| p.sample(&mut rng) as usize).unwrap_or(0) } else { 0 };
    let (h_lo, h_hi) = scn.gnb_height_range_m;
    let spacing = 360.0 / scn.n_sectors as f64;
    (0..count)
        .map(|_| {
            let position = Point::new(rng.random::<f64>() * scn.area_m, rng.random::<f64>() * scn.area_m);
            let height_m = h_lo + rng.random::<f64>() * (h_hi - h_lo);
            let base = rng.random::<f64>() * 360.0;
            let carrier = if rng.random::<bool>() { Carrier::A } else { Carrier::B };
            let sector_azimuths_deg = (0..scn.n_sectors).map(|k| (base + k as f64 * spacing) % 360.0).collect();
            Gnb { position, height_m, carrier, sector_azimuths_deg }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct UeSelection {
    /// Selected UEs, in sector order.
    pub ues: Vec<Ue>,
    pub unfilled_sectors: usize,
    pub candidates: usize,
}

/// Drops uniform candidate UEs until every sector has an associated candidate
/// (or the cap of `fill_cap_per_sector × sectors` candidates is reached), then
/// keeps one uniformly chosen associate per sector.
pub fn drop_ues(scn: &NetworkScenario, gnbs: &[Gnb], seed: Seed) -> Result<UeSelection> {
    if gnbs.is_empty() {
        return Err(Error::invalid("cannot drop UEs without gNBs"));
    }
    let sectors: Vec<SectorId> = gnbs
        .iter()
        .enumerate()
        .flat_map(|(g, gnb)| (0..gnb.sector_azimuths_deg.len()).map(move |sector| SectorId { gnb: g, sector }))
        .collect();
    let flat = |id: SectorId| sectors.binary_search(&id).expect("sector exists");
    let cap = scn.fill_cap_per_sector * sectors.len();
    let mut rng = seed.rng();
    let mut candidates: Vec<Ue> = Vec::new();
    let mut associates: Vec<Vec<usize>> = vec![Vec::new(); sectors.len()];
    let mut filled = 0;
    let mut draws = 0usize;

    while candidates.len() < cap && filled < sectors.len() && draws < 100 * cap {
        draws += 1;
        let position = Point::new(rng.random::<f64>() * scn.area_m, rng.random::<f64>() * scn.area_m);
        let carrier = if rng.random::<bool>() { Carrier::A } else { Carrier::B };
        if gnbs.iter().any(|g| wraparound_distance(g.position, position, scn.area_m) < scn.min_dist_m) {
            continue;
        }
        let ue = Ue { position, carrier, link_seed: seed.derive(tag::LINK, candidates.len() as u64) };
        if let Some(best) = strongest_sector(scn, gnbs, &ue)? {
            let list = &mut associates[flat(best)];
            if list.is_empty() {
                filled += 1;
            }
            list.push(candidates.len());
        }
        candidates.push(ue);
    }

    let mut ues = Vec::with_capacity(filled);
    let mut unfilled = 0;
    for list in &associates {
        if list.is_empty() {
            unfilled += 1;
        } else {
            ues.push(candidates[list[rng.random_range(0..list.len())]].clone());
        }
    }
    Ok(UeSelection { ues, unfilled_sectors: unfilled, candidates: candidates.len() })
}

/// Large-scale state of one gNB–UE link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkState {
    pub los: bool,
    pub shadow_db: f64,
}

/// Geometry and large-scale gain of one gNB–UE link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub d2d_m: f64,
    pub d3d_m: f64,
    /// Direction from the gNB toward the UE.
    pub departure: Direction,
    /// Direction from the UE toward the gNB.
    pub arrival: Direction,
    pub state: LinkState,
    /// Linear path gain including shadowing.
    pub path_gain: f64,
}

pub fn link_state(ue: &Ue, gnb_index: usize, d2d_m: f64) -> LinkState {
    let mut rng = ue.link_seed.derive(tag::LINK, gnb_index as u64).rng();
    let los = rng.random::<f64>() < los_probability(d2d_m);
    let z: f64 = rng.sample(StandardNormal);
    LinkState { los, shadow_db: z * shadow_sigma_db(los) }
}

pub fn link_geometry(scn: &NetworkScenario, gnbs: &[Gnb], gnb_index: usize, ue: &Ue) -> Result<LinkGeometry> {
    let gnb = &gnbs[gnb_index];
    let (dx, dy) = wraparound_delta(gnb.position, ue.position, scn.area_m);
    let dz = scn.ue_height_m - gnb.height_m;
    let d2d_m = dx.hypot(dy);
    let d3d_m = d2d_m.hypot(dz);
    let state = link_state(ue, gnb_index, d2d_m);
    let pl = pathloss_umi(d2d_m, d3d_m, gnb.height_m, scn.ue_height_m, scn.fc_ghz, state.los)?;
    Ok(LinkGeometry {
        d2d_m,
        d3d_m,
        departure: Direction::from_vector(dx, dy, dz),
        arrival: Direction::from_vector(-dx, -dy, -dz),
        state,
        path_gain: 10f64.powf(-(pl + state.shadow_db) / 10.0),
    })
}

/// Boresight of a sector panel.
pub fn sector_boresight(scn: &NetworkScenario, gnb: &Gnb, sector: usize) -> Direction {
    Direction { az_deg: gnb.sector_azimuths_deg[sector], el_deg: scn.downtilt_deg }
}

/// TX element gain (linear) of `sector` toward a departure direction.
pub fn tx_element_gain(scn: &NetworkScenario, gnb: &Gnb, sector: usize, departure: Direction) -> f64 {
    let local = to_local(departure, sector_boresight(scn, gnb, sector));
    10f64.powf(element_gain_local_db(local, scn.hpbw_deg) / 10.0)
}

/// Same-carrier sector with the largest beamformed received power at `ue`,
/// ties going to the lowest index. `None` when no gNB shares the UE's carrier.
///
/// Beamforming gains toward a served UE are the same for every candidate, so
/// only the TX element gain and the path gain discriminate.
pub fn strongest_sector(scn: &NetworkScenario, gnbs: &[Gnb], ue: &Ue) -> Result<Option<SectorId>> {
    let mut best: Option<(SectorId, f64)> = None;
    for (g, gnb) in gnbs.iter().enumerate() {
        if gnb.carrier != ue.carrier {
            continue;
        }
        let link = link_geometry(scn, gnbs, g, ue)?;
        for sector in 0..gnb.sector_azimuths_deg.len() {
            let metric = tx_element_gain(scn, gnb, sector, link.departure) * link.path_gain;
            if best.is_none_or(|(_, m)| metric > m) {
                best = Some((SectorId { gnb: g, sector }, metric));
            }
        }
    }
    Ok(best.map(|(id, _)| id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::design;

    fn scn() -> NetworkScenario {
        NetworkScenario::for_design(&design("28-d1").unwrap())
    }

    #[test]
    fn gnb_drop_is_deterministic() {
        assert_eq!(drop_gnbs(&scn(), Seed(3)), drop_gnbs(&scn(), Seed(3)));
        assert_ne!(drop_gnbs(&scn(), Seed(3)), drop_gnbs(&scn(), Seed(4)));
    }

    #[test]
    fn gnb_drop_respects_ranges() {
        let s = scn();
        for g in drop_gnbs(&s, Seed(1)) {
            assert!((0.0..s.area_m).contains(&g.position.x) && (0.0..s.area_m).contains(&g.position.y));
            assert!((2.0..=5.0).contains(&g.height_m));
            assert_eq!(g.sector_azimuths_deg.len(), 3);
            let d = (g.sector_azimuths_deg[1] - g.sector_azimuths_deg[0]).rem_euclid(360.0);
            assert!((d - 120.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sparse_network_is_usually_empty() {
        let mut s = scn();
        s.isd_m = 1e6;
        let empty = (0..200).filter(|&i| drop_gnbs(&s, Seed(i)).is_empty()).count();
        assert_eq!(empty, 200);
    }

    #[test]
    fn single_gnb_fills_three_sectors() {
        let s = scn();
        let gnb = Gnb {
            position: Point::new(500.0, 500.0),
            height_m: 3.0,
            carrier: Carrier::A,
            sector_azimuths_deg: vec![10.0, 130.0, 250.0],
        };
        let sel = drop_ues(&s, std::slice::from_ref(&gnb), Seed(2)).unwrap();
        assert_eq!(sel.ues.len(), 3);
        assert_eq!(sel.unfilled_sectors, 0);
        let served: Vec<_> = sel.ues.iter().map(|u| strongest_sector(&s, &[gnb.clone()], u).unwrap().unwrap()).collect();
        assert_eq!(served.iter().map(|id| id.sector).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(sel.ues.iter().all(|u| u.carrier == Carrier::A));
    }

    #[test]
    fn ues_keep_minimum_distance_and_are_deterministic() {
        let s = scn();
        for seed in 0..5 {
            let d = Drop::generate(&s, Seed(seed)).unwrap();
            for u in &d.ues {
                for g in &d.gnbs {
                    assert!(wraparound_distance(u.position, g.position, s.area_m) >= s.min_dist_m);
                }
            }
            assert_eq!(d, Drop::generate(&s, Seed(seed)).unwrap());
        }
    }

    #[test]
    fn drop_ues_needs_gnbs() {
        assert!(drop_ues(&scn(), &[], Seed(0)).is_err());
    }

    #[test]
    fn link_state_statistics() {
        // Shadowing is zero-mean with the LOS/NLOS spread.
        let n = 20_000;
        let ues: Vec<Ue> = (0..n)
            .map(|i| Ue { position: Point::new(0.0, 0.0), carrier: Carrier::A, link_seed: Seed(i) })
            .collect();
        let states: Vec<_> = ues.iter().map(|u| link_state(u, 0, 100.0)).collect();
        let los_frac = states.iter().filter(|s| s.los).count() as f64 / n as f64;
        assert!((los_frac - los_probability(100.0)).abs() < 0.015, "{los_frac}");
        let nlos: Vec<f64> = states.iter().filter(|s| !s.los).map(|s| s.shadow_db).collect();
        let mean = nlos.iter().sum::<f64>() / nlos.len() as f64;
        let sd = (nlos.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / nlos.len() as f64).sqrt();
        assert!(mean.abs() < 0.15 && (sd - 7.82).abs() < 0.2, "{mean} {sd}");
    }
}
