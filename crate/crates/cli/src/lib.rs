//! Command-line experiments on top of `mmw-aci`: a link-level sweep with a
//! saturation-model fit, and network SINR distributions.

pub mod config;
pub mod error;
pub mod runners;

use std::path::Path;

pub use config::{parse_config, ExperimentConfig, Grid, Mode};
pub use error::CliError;
pub use runners::{run_link_fit, run_network, write_link_fit, write_network, LinkFitOutcome, MeasurementRow};

/// Environment variable capping the worker count; `0` or unset means one
/// worker per core.
pub const THREADS_ENV: &str = "SIM_THREADS";

/// Runs `f` on a pool sized by [`THREADS_ENV`].
pub fn with_thread_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Config(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")))?,
        Err(_) => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {threads} worker threads: {e}")))?;
    Ok(pool.install(f))
}

/// Runs one experiment and writes its tables into `out`. A link fit that does
/// not converge still writes its tables before reporting
/// [`CliError::NotConverged`].
pub fn execute(cfg: &ExperimentConfig, mode: Mode, out: &Path) -> Result<Vec<std::path::PathBuf>, CliError> {
    match mode {
        Mode::LinkFit => {
            let outcome = run_link_fit(cfg)?;
            let paths = write_link_fit(out, cfg, &outcome)?;
            if !outcome.report.converged {
                return Err(CliError::NotConverged(outcome.report.iterations));
            }
            Ok(paths)
        }
        Mode::Network => {
            let result = run_network(cfg)?;
            write_network(out, cfg, &result)
        }
    }
}
