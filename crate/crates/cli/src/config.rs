//! Experiment configuration files.
//!
//! The grammar is flat: `key = value` lines, optional `[section]` headers and
//! `#` comments. Lists are comma separated. Every key is optional.
//!
//! ```text
//! design = 28-d1        # 28-d1, 28-d2, 140-d1, 140-d2 or custom
//! seed = 7
//! n_drops = 100
//!
//! [grid]
//! gamma_sig_db = -10, 0, 10, 20, 30, 40, 50, 60
//! gamma_int_db = -inf, 10, 30, 50
//! frames_per_point = 64
//!
//! [scenario]
//! isd_m = 150
//! gnb_array = 8x8
//!
//! [custom]
//! band = 28
//! stage = lna, 14.26, 2.13, -1.456
//! stage = mixer, 0.16, 9.039, inf
//! adc_bits = 4
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use mmw_aci::designs::{design, Band, DESIGN_NAMES};
use mmw_aci::netsim::{ArrayShape, NetworkScenario};
use mmw_aci::rffe::{cascade_noise_figure, mmse_loading, RffeChainSpec, StageSpec};
use mmw_aci::SaturationModel;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    LinkFit,
    Network,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "link-fit" => Some(Mode::LinkFit),
            "network" => Some(Mode::Network),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::LinkFit => "link-fit",
            Mode::Network => "network",
        })
    }
}

/// Link-level sweep: every `gamma_sig_db × gamma_int_db` pair is simulated.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub gamma_sig_db: Vec<f64>,
    /// `-inf` means no adjacent carrier.
    pub gamma_int_db: Vec<f64>,
    pub frames_per_point: usize,
    pub n_fft: usize,
    pub n_sig: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            gamma_sig_db: (0..15).map(|k| -10.0 + 5.0 * k as f64).collect(),
            gamma_int_db: vec![f64::NEG_INFINITY, 10.0, 30.0, 50.0],
            frames_per_point: 64,
            n_fft: 1024,
            n_sig: 512,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Set by the config file or the command line.
    pub mode: Option<Mode>,
    /// Built-in design name, or `"custom"`.
    pub design: String,
    pub chain: RffeChainSpec,
    pub sample_rate_hz: f64,
    pub scenario: NetworkScenario,
    pub grid: Grid,
    pub n_drops: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Cascade noise figure of the configured chain, in dB.
    pub fn noise_figure_db(&self) -> f64 {
        cascade_noise_figure(&self.chain.stages).unwrap_or(0.0)
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        parse_config("").expect("defaults are valid")
    }
}

struct Entry {
    line: usize,
    value: String,
}

const TOP_KEYS: &[&str] = &["mode", "design", "seed", "n_drops", "out"];
const GRID_KEYS: &[&str] = &["gamma_sig_db", "gamma_int_db", "frames_per_point", "n_fft", "n_sig"];
const SCENARIO_KEYS: &[&str] = &[
    "area_m",
    "isd_m",
    "min_dist_m",
    "fc_ghz",
    "bw_hz",
    "tx_power_dbm",
    "gnb_height_min_m",
    "gnb_height_max_m",
    "ue_height_m",
    "downtilt_deg",
    "n_sectors",
    "hpbw_deg",
    "gnb_array",
    "ue_array",
    "fill_cap_per_sector",
    "linear_cochannel_interference",
];
const CUSTOM_KEYS: &[&str] =
    &["band", "stage", "adc_bits", "adc_loading_sigma", "beta", "alpha1", "alpha2", "rx_antennas"];

fn section_keys(section: &str) -> Option<&'static [&'static str]> {
    match section {
        "" => Some(TOP_KEYS),
        "grid" => Some(GRID_KEYS),
        "scenario" => Some(SCENARIO_KEYS),
        "custom" => Some(CUSTOM_KEYS),
        _ => None,
    }
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    let mut stages: Vec<Entry> = Vec::new();
    let mut unknown: Vec<String> = Vec::new();
    let mut section = String::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| CliError::config(line, format!("malformed section header {body:?}")))?
                .trim();
            if section_keys(name).is_none() {
                return Err(CliError::config(line, format!("unknown section [{name}]")));
            }
            section = name.to_string();
            continue;
        }
        let (key, value) =
            body.split_once('=').ok_or_else(|| CliError::config(line, format!("expected `key = value`, got {body:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(CliError::config(line, "missing key before `=`"));
        }
        let qualified = if section.is_empty() { key.to_string() } else { format!("{section}.{key}") };
        if !section_keys(&section).expect("checked at header").contains(&key) {
            unknown.push(format!("{qualified} (line {line})"));
            continue;
        }
        let entry = Entry { line, value: value.to_string() };
        if qualified == "custom.stage" {
            stages.push(entry);
        } else if let Some(prev) = entries.insert(qualified.clone(), entry) {
            return Err(CliError::config(line, format!("{qualified} already set on line {}", prev.line)));
        }
    }
    if !unknown.is_empty() {
        return Err(CliError::Config(format!("unknown keys: {}", unknown.join(", "))));
    }
    build(&entries, &stages)
}

fn get<T>(
    entries: &BTreeMap<String, Entry>,
    key: &str,
    what: &str,
    parse: impl Fn(&str) -> Option<T>,
) -> Result<Option<T>, CliError> {
    match entries.get(key) {
        None => Ok(None),
        Some(e) => parse(&e.value)
            .map(Some)
            .ok_or_else(|| CliError::config(e.line, format!("{key}: expected {what}, got {:?}", e.value))),
    }
}

fn parse_f64(s: &str) -> Option<f64> {
    match s {
        "inf" | "+inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse::<f64>().ok().filter(|v| !v.is_nan()),
    }
}

fn finite(s: &str) -> Option<f64> {
    parse_f64(s).filter(|v| v.is_finite())
}

fn list(s: &str) -> Option<Vec<f64>> {
    let v: Option<Vec<f64>> = s.split(',').map(|x| parse_f64(x.trim())).collect();
    v.filter(|v| !v.is_empty())
}

fn array(s: &str) -> Option<ArrayShape> {
    let (r, c) = s.split_once(['x', 'X'])?;
    Some(ArrayShape::new(r.trim().parse().ok()?, c.trim().parse().ok()?))
}

fn boolean(s: &str) -> Option<bool> {
    match s {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

fn stage(e: &Entry) -> Result<StageSpec, CliError> {
    let fields: Vec<&str> = e.value.split(',').map(str::trim).collect();
    let bad = || CliError::config(e.line, format!("custom.stage: expected `name, gain_db, nf_db, iip3_dbm`, got {:?}", e.value));
    if fields.len() != 4 || fields[0].is_empty() {
        return Err(bad());
    }
    let gain = finite(fields[1]).ok_or_else(bad)?;
    let nf = finite(fields[2]).ok_or_else(bad)?;
    let iip3 = parse_f64(fields[3]).ok_or_else(bad)?;
    let iip3 = if iip3 == f64::INFINITY { None } else { Some(iip3) };
    StageSpec::new(fields[0], gain, nf, iip3).map_err(|err| CliError::config(e.line, err.to_string()))
}

fn build(entries: &BTreeMap<String, Entry>, stage_entries: &[Entry]) -> Result<ExperimentConfig, CliError> {
    let at = |key: &str| entries.get(key).map_or(0, |e| e.line);
    let mode = get(entries, "mode", "link-fit or network", Mode::parse)?;
    let design_name = entries.get("design").map_or("28-d1".to_string(), |e| e.value.clone());

    let (chain, band, model, rx_antennas) = if design_name == "custom" {
        let band = get(entries, "custom.band", "28 or 140", |s| match s {
            "28" => Some(Band::Ghz28),
            "140" => Some(Band::Ghz140),
            _ => None,
        })?
        .unwrap_or(Band::Ghz28);
        let stages = if stage_entries.is_empty() {
            RffeChainSpec::near_identity().stages
        } else {
            stage_entries.iter().map(stage).collect::<Result<_, _>>()?
        };
        let bits = get(entries, "custom.adc_bits", "an integer", |s| s.parse::<u32>().ok())?.unwrap_or(14);
        let loading = match get(entries, "custom.adc_loading_sigma", "a number", finite)? {
            Some(l) => l,
            None => mmse_loading(bits).map_err(|e| CliError::config(at("custom.adc_bits"), e.to_string()))?,
        };
        let chain =
            RffeChainSpec::new(stages, bits, loading).map_err(|e| CliError::config(at("custom.adc_bits"), e.to_string()))?;
        let beta = get(entries, "custom.beta", "a number", finite)?.unwrap_or(1.0);
        let a1 = get(entries, "custom.alpha1", "a number", finite)?.unwrap_or(0.0);
        let a2 = get(entries, "custom.alpha2", "a number", finite)?.unwrap_or(0.0);
        let model = SaturationModel::new(beta, a1, a2).map_err(|e| CliError::config(at("custom.beta"), e.to_string()))?;
        let rx = get(entries, "custom.rx_antennas", "an integer", |s| s.parse::<usize>().ok())?;
        let rx = rx.unwrap_or_else(|| ArrayShape::from(band.ue_array()).elements());
        (chain, band, model, rx)
    } else {
        let d = design(&design_name).map_err(|_| {
            CliError::config(at("design"), format!("unknown design {design_name:?}; expected one of {}, custom", DESIGN_NAMES.join(", ")))
        })?;
        if let Some(k) = entries.keys().find(|k| k.starts_with("custom.")) {
            return Err(CliError::config(at(k), format!("{k} only applies to design = custom")));
        }
        if let Some(e) = stage_entries.first() {
            return Err(CliError::config(e.line, "custom.stage only applies to design = custom"));
        }
        (d.chain(), d.band, d.model, d.rx_antennas)
    };

    let mut scn = NetworkScenario::for_band(band, model);
    scn.model_rx_antennas = rx_antennas;
    let num = |key: &str| get(entries, &format!("scenario.{key}"), "a finite number", finite);
    let count = |key: &str| get(entries, &format!("scenario.{key}"), "a non-negative integer", |s| s.parse::<usize>().ok());
    let shape = |key: &str| get(entries, &format!("scenario.{key}"), "an array shape like 8x8", array);
    macro_rules! set {
        ($field:ident, $getter:ident) => {
            if let Some(v) = $getter(stringify!($field))? {
                scn.$field = v;
            }
        };
    }
    set!(area_m, num);
    set!(isd_m, num);
    set!(min_dist_m, num);
    set!(fc_ghz, num);
    set!(bw_hz, num);
    set!(tx_power_dbm, num);
    set!(ue_height_m, num);
    set!(downtilt_deg, num);
    set!(hpbw_deg, num);
    set!(n_sectors, count);
    set!(fill_cap_per_sector, count);
    set!(gnb_array, shape);
    set!(ue_array, shape);
    if let Some(v) = num("gnb_height_min_m")? {
        scn.gnb_height_range_m.0 = v;
    }
    if let Some(v) = num("gnb_height_max_m")? {
        scn.gnb_height_range_m.1 = v;
    }
    if let Some(v) = get(entries, "scenario.linear_cochannel_interference", "true or false", boolean)? {
        scn.linear_cochannel_interference = v;
    }
    let scenario_line = entries.iter().filter(|(k, _)| k.starts_with("scenario.")).map(|(_, e)| e.line).min().unwrap_or(0);
    scn.validate().map_err(|e| CliError::config(scenario_line, e.to_string()))?;

    let mut grid = Grid::default();
    if let Some(v) = get(entries, "grid.gamma_sig_db", "a comma-separated list of numbers", list)? {
        grid.gamma_sig_db = v;
    }
    if let Some(v) = get(entries, "grid.gamma_int_db", "a comma-separated list of numbers", list)? {
        grid.gamma_int_db = v;
    }
    let positive = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0);
    if let Some(v) = get(entries, "grid.frames_per_point", "a positive integer", positive)? {
        grid.frames_per_point = v;
    }
    if let Some(v) = get(entries, "grid.n_fft", "a positive integer", positive)? {
        grid.n_fft = v;
    }
    if let Some(v) = get(entries, "grid.n_sig", "a positive integer", positive)? {
        grid.n_sig = v;
    }
    if grid.n_sig >= grid.n_fft {
        return Err(CliError::config(at("grid.n_sig"), "grid.n_sig must be smaller than grid.n_fft"));
    }
    if grid.gamma_sig_db.iter().any(|v| !v.is_finite()) {
        return Err(CliError::config(at("grid.gamma_sig_db"), "grid.gamma_sig_db values must be finite"));
    }
    if grid.gamma_int_db.iter().any(|&v| v.is_nan() || v == f64::INFINITY) {
        return Err(CliError::config(at("grid.gamma_int_db"), "grid.gamma_int_db values must be finite or -inf"));
    }

    Ok(ExperimentConfig {
        mode,
        design: design_name,
        chain,
        sample_rate_hz: band.sample_rate_hz(),
        scenario: scn,
        grid,
        n_drops: get(entries, "n_drops", "a positive integer", positive)?.unwrap_or(100),
        seed: get(entries, "seed", "a non-negative integer", |s| s.parse::<u64>().ok())?.unwrap_or(1),
        out: entries.get("out").map(|e| PathBuf::from(&e.value)),
    })
}
