//! Monte Carlo over independent drops.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::budget::{build_link_budgets, compute_sinr_with, LinkBudget, SinrMode};
use super::drop::{Carrier, Drop};
use super::scenario::NetworkScenario;
use crate::error::{Error, Result};
use crate::seed::{tag, Seed};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UeReport {
    pub drop: usize,
    /// Index into the drop's UE list.
    pub ue: usize,
    pub serving_gnb: usize,
    pub serving_sector: usize,
    pub carrier: Carrier,
    pub budget: LinkBudget,
    pub sinr_full: f64,
    pub sinr_no_aci: f64,
    pub sinr_no_distortion: f64,
}

impl UeReport {
    pub fn sinr(&self, mode: SinrMode) -> f64 {
        match mode {
            SinrMode::Full => self.sinr_full,
            SinrMode::NoAci => self.sinr_no_aci,
            SinrMode::NoDistortion => self.sinr_no_distortion,
        }
    }
}

/// Empirical CDF over sorted samples; the i-th smallest value (0-based) sits
/// at cumulative fraction `(i + 1) / n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCdf {
    values: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyResult);
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::invalid("CDF samples must not be NaN"));
        }
        values.sort_by(f64::total_cmp);
        Ok(EmpiricalCdf { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.values.len() as f64;
        self.values.iter().enumerate().map(move |(i, &v)| (v, (i + 1) as f64 / n))
    }

    /// Smallest sample whose cumulative fraction reaches `p`.
    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.values.len();
        let k = ((p * n as f64).ceil() as usize).clamp(1, n);
        self.values[k - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkResult {
    pub reports: Vec<UeReport>,
    /// Per-mode SINR CDFs in dB, indexed like [`SinrMode::ALL`].
    pub cdfs: [EmpiricalCdf; 3],
    pub n_drops: usize,
    pub gnb_counts: Vec<usize>,
    pub unfilled_sectors: usize,
    pub excluded_ues: usize,
}

impl NetworkResult {
    pub fn cdf(&self, mode: SinrMode) -> &EmpiricalCdf {
        &self.cdfs[SinrMode::ALL.iter().position(|&m| m == mode).expect("mode listed")]
    }
}

struct DropOutcome {
    reports: Vec<UeReport>,
    gnbs: usize,
    unfilled: usize,
    excluded: usize,
}

fn run_one(scn: &NetworkScenario, index: usize, seed: Seed) -> Result<DropOutcome> {
    let drop = Drop::generate(scn, seed.derive(tag::DROP, index as u64))?;
    let budgets = build_link_budgets(&drop, scn)?;
    let sinr = |b: &LinkBudget, mode| compute_sinr_with(b, &scn.model, mode, scn.linear_cochannel_interference);
    let reports = budgets
        .links
        .iter()
        .map(|l| UeReport {
            drop: index,
            ue: l.ue,
            serving_gnb: l.serving.gnb,
            serving_sector: l.serving.sector,
            carrier: drop.ues[l.ue].carrier,
            budget: l.budget,
            sinr_full: sinr(&l.budget, SinrMode::Full),
            sinr_no_aci: sinr(&l.budget, SinrMode::NoAci),
            sinr_no_distortion: sinr(&l.budget, SinrMode::NoDistortion),
        })
        .collect();
    Ok(DropOutcome { reports, gnbs: drop.gnbs.len(), unfilled: drop.unfilled_sectors, excluded: budgets.excluded })
}

/// Runs `n_drops` independent drops in parallel. Results do not depend on the
/// thread count.
pub fn run_drops(scn: &NetworkScenario, n_drops: usize, seed: Seed) -> Result<NetworkResult> {
    if n_drops == 0 {
        return Err(Error::invalid("n_drops must be at least 1"));
    }
    scn.validate()?;
    let outcomes: Vec<DropOutcome> = (0..n_drops).into_par_iter().map(|i| run_one(scn, i, seed)).collect::<Result<_>>()?;
    let mut reports = Vec::new();
    let mut gnb_counts = Vec::with_capacity(n_drops);
    let (mut unfilled_sectors, mut excluded_ues) = (0, 0);
    for o in outcomes {
        reports.extend(o.reports);
        gnb_counts.push(o.gnbs);
        unfilled_sectors += o.unfilled;
        excluded_ues += o.excluded;
    }
    if reports.is_empty() {
        return Err(Error::EmptyResult);
    }
    let cdf = |mode| EmpiricalCdf::new(reports.iter().map(|r| 10.0 * r.sinr(mode).log10()).collect());
    let cdfs = [cdf(SinrMode::Full)?, cdf(SinrMode::NoAci)?, cdf(SinrMode::NoDistortion)?];
    Ok(NetworkResult { reports, cdfs, n_drops, gnb_counts, unfilled_sectors, excluded_ues })
}
