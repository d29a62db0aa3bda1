//! The link-fit and network experiments and their output tables.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use mmw_aci::bussgang::{estimate_from_frames, fit_model, heuristic_init_from, model_predict, output_snr, FitReport, SnrMeasurement};
use mmw_aci::netsim::{run_drops, NetworkResult, SinrMode};
use mmw_aci::rffe::simulate_chain;
use mmw_aci::{Error, FrequencyPlan, Seed, SnrPair};

use crate::config::ExperimentConfig;
use crate::error::CliError;

/// Stream tag for per-grid-point seeds.
const GRID_POINT: u64 = 0x6C69_6E6B;

/// One simulated grid point and the fitted model's prediction there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementRow {
    pub gamma_sig_db: f64,
    pub gamma_int_db: f64,
    pub gamma_out_db: f64,
    pub gamma_out_model_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkFitOutcome {
    pub rows: Vec<MeasurementRow>,
    pub report: FitReport,
    pub noise_figure_db: f64,
}

impl LinkFitOutcome {
    pub fn rms_db(&self) -> f64 {
        self.report.rms_db(self.rows.len())
    }
}

fn db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Measures the output SNR at every grid point.
pub fn measure_grid(cfg: &ExperimentConfig) -> Result<Vec<SnrMeasurement>, CliError> {
    let g = &cfg.grid;
    let plan = FrequencyPlan::contiguous(g.n_fft, g.n_sig, cfg.sample_rate_hz)?;
    let seed = Seed::new(cfg.seed);
    let mut out = Vec::with_capacity(g.gamma_sig_db.len() * g.gamma_int_db.len());
    for &int_db in &g.gamma_int_db {
        for &sig_db in &g.gamma_sig_db {
            let snr = SnrPair::from_db(sig_db, int_db)?;
            let frames = simulate_chain(&plan, &cfg.chain, snr, g.frames_per_point, seed.derive(GRID_POINT, out.len() as u64))?;
            let est = estimate_from_frames(&frames)?;
            let gamma_out = output_snr(&est).finite().ok_or_else(|| {
                Error::Degenerate(format!("distortion-free output at gamma_sig = {sig_db} dB; cannot take dB residuals"))
            })?;
            out.push(SnrMeasurement::new(snr.gamma_sig(), snr.gamma_int(), gamma_out)?);
        }
    }
    Ok(out)
}

/// Simulates the grid and fits the saturation model. A fit that runs out of
/// iterations is still returned; check `report.converged`.
pub fn run_link_fit(cfg: &ExperimentConfig) -> Result<LinkFitOutcome, CliError> {
    let meas = measure_grid(cfg)?;
    let noise_figure_db = cfg.noise_figure_db();
    let init = heuristic_init_from(&meas, 10f64.powf(noise_figure_db / 10.0))?;
    let report = fit_model(&meas, init)?;
    let ints = cfg.grid.gamma_int_db.iter().flat_map(|&i| cfg.grid.gamma_sig_db.iter().map(move |_| i));
    let rows = meas
        .iter()
        .zip(ints)
        .map(|(m, int_db)| MeasurementRow {
            gamma_sig_db: db(m.gamma_sig),
            gamma_int_db: int_db,
            gamma_out_db: db(m.gamma_out),
            gamma_out_model_db: db(model_predict(&report.model, m.snr())),
        })
        .collect();
    Ok(LinkFitOutcome { rows, report, noise_figure_db })
}

pub fn run_network(cfg: &ExperimentConfig) -> Result<NetworkResult, CliError> {
    Ok(run_drops(&cfg.scenario, cfg.n_drops, Seed::new(cfg.seed))?)
}

fn write(dir: &Path, name: &str, body: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
    Ok(path)
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))
}

fn summary(pairs: &[(&str, String)]) -> String {
    let mut s = String::from("key,value\n");
    for (k, v) in pairs {
        let _ = writeln!(s, "{k},{v}");
    }
    s
}

/// Writes `measurements.csv` and `fit_summary.csv`.
pub fn write_link_fit(dir: &Path, cfg: &ExperimentConfig, outcome: &LinkFitOutcome) -> Result<Vec<PathBuf>, CliError> {
    ensure_dir(dir)?;
    let mut table = String::from("gamma_sig_db,gamma_int_db,gamma_out_db,gamma_out_model_db\n");
    for r in &outcome.rows {
        let _ = writeln!(table, "{},{},{},{}", r.gamma_sig_db, r.gamma_int_db, r.gamma_out_db, r.gamma_out_model_db);
    }
    let m = outcome.report.model;
    let fit = summary(&[
        ("design", cfg.design.clone()),
        ("seed", cfg.seed.to_string()),
        ("beta", m.beta().to_string()),
        ("alpha1", format!("{:e}", m.alpha1())),
        ("alpha2", format!("{:e}", m.alpha2())),
        ("saturation_snr_db", db(m.saturation_snr()).to_string()),
        ("noise_figure_db", outcome.noise_figure_db.to_string()),
        ("rms_residual_db", outcome.rms_db().to_string()),
        ("iterations", outcome.report.iterations.to_string()),
        ("converged", outcome.report.converged.to_string()),
        ("n_points", outcome.rows.len().to_string()),
    ]);
    Ok(vec![write(dir, "measurements.csv", &table)?, write(dir, "fit_summary.csv", &fit)?])
}

/// Writes one CDF table per SINR mode, the per-UE table and a summary.
pub fn write_network(dir: &Path, cfg: &ExperimentConfig, result: &NetworkResult) -> Result<Vec<PathBuf>, CliError> {
    ensure_dir(dir)?;
    let mut paths = Vec::new();
    for mode in SinrMode::ALL {
        let mut t = String::from("snr_db,cdf\n");
        for (x, p) in result.cdf(mode).points() {
            let _ = writeln!(t, "{x},{p}");
        }
        paths.push(write(dir, &format!("cdf_{}.csv", mode.name()), &t)?);
    }

    let mut t = String::from(
        "drop,ue,serving_gnb,serving_sector,carrier,rx_sig_energy_w,rx_sig_energy_element_w,rx_tot_same_carrier_w,\
         rx_tot_adjacent_w,rx_int_linear_w,noise_energy_w,sinr_full_db,sinr_no_aci_db,sinr_no_distortion_db\n",
    );
    for r in &result.reports {
        let b = &r.budget;
        let _ = writeln!(
            t,
            "{},{},{},{},{:?},{:e},{:e},{:e},{:e},{:e},{:e},{},{},{}",
            r.drop,
            r.ue,
            r.serving_gnb,
            r.serving_sector,
            r.carrier,
            b.rx_sig_energy,
            b.rx_sig_energy_element,
            b.rx_tot_same_carrier,
            b.rx_tot_adjacent,
            b.rx_int_linear,
            b.noise_energy,
            db(r.sinr_full),
            db(r.sinr_no_aci),
            db(r.sinr_no_distortion)
        );
    }
    paths.push(write(dir, "ue_reports.csv", &t)?);

    let mean_gnbs = result.gnb_counts.iter().sum::<usize>() as f64 / result.n_drops as f64;
    let mut pairs = vec![
        ("design", cfg.design.clone()),
        ("seed", cfg.seed.to_string()),
        ("n_drops", result.n_drops.to_string()),
        ("mean_gnbs_per_drop", mean_gnbs.to_string()),
        ("served_ues", result.reports.len().to_string()),
        ("unfilled_sectors", result.unfilled_sectors.to_string()),
        ("excluded_ues", result.excluded_ues.to_string()),
    ];
    let keys: Vec<String> =
        SinrMode::ALL.iter().flat_map(|m| [10, 50, 90].map(|p| format!("{}_p{p}_db", m.name()))).collect();
    let mut k = keys.iter();
    for mode in SinrMode::ALL {
        for p in [0.1, 0.5, 0.9] {
            pairs.push((k.next().expect("one key per quantile"), result.cdf(mode).quantile(p).to_string()));
        }
    }
    paths.push(write(dir, "network_summary.csv", &summary(&pairs))?);
    Ok(paths)
}
