//! Two-carrier cellular network: HPPP sites, one active UE per sector, and
//! per-UE SINR with the fitted receiver model.

pub mod antenna;
pub mod budget;
pub mod channel;
pub mod drop;
pub mod geometry;
pub mod run;
pub mod scenario;

pub use antenna::{beamforming_gain, beamforming_gain_db, element_gain_db, ArrayShape};
pub use budget::{build_link_budgets, compute_sinr, compute_sinr_with, LinkBudget, LinkBudgets, SinrMode, UeLink};
pub use channel::{los_probability, pathloss_umi};
pub use drop::{drop_gnbs, drop_ues, Carrier, Drop, Gnb, SectorId, Ue};
pub use geometry::{wraparound_distance, Direction, Point};
pub use run::{run_drops, EmpiricalCdf, NetworkResult, UeReport};
pub use scenario::NetworkScenario;
