use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mmw_aci::designs::all_designs;
use mmw_aci::units::linear_to_db;
use mmw_aci_cli::{execute, parse_config, with_thread_pool, CliError, Mode};

#[derive(Parser)]
#[command(name = "simulate", version, about = "Millimeter-wave receiver and network simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the receiver chain over an SNR grid and fit the saturation model.
    LinkFit(RunArgs),
    /// Drop random networks and write per-mode SINR CDFs.
    Network(RunArgs),
    /// Print the built-in receiver designs.
    ListDesigns,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the seed in the configuration file.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(mode: Mode, args: RunArgs) -> Result<(), CliError> {
    let text = match &args.config {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?,
        None => String::new(),
    };
    let mut cfg = parse_config(&text)?;
    if let Some(m) = cfg.mode {
        if m != mode {
            return Err(CliError::Config(format!("config file sets mode = {m} but the command is {mode}")));
        }
    }
    cfg.mode = Some(mode);
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let out = args.out.or_else(|| cfg.out.clone()).ok_or_else(|| CliError::Config("no output directory; pass --out".into()))?;
    for path in with_thread_pool(|| execute(&cfg, mode, &out))?? {
        println!("{}", path.display());
    }
    Ok(())
}

fn list_designs() {
    println!("name,band_ghz,lna,mixer,adc_bits,beta,alpha1,alpha2,saturation_snr_db,rx_antennas,nf_db,power_mw");
    for d in all_designs() {
        let m = d.model;
        println!(
            "{},{},{},{},{},{},{},{},{:.2},{},{},{}",
            d.name,
            d.band.carrier_ghz(),
            d.lna.name,
            d.mixer.name,
            d.adc_bits,
            m.beta(),
            m.alpha1(),
            m.alpha2(),
            linear_to_db(m.saturation_snr()).unwrap_or(f64::NAN),
            d.rx_antennas,
            d.nf_db,
            d.power_mw
        );
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::LinkFit(args) => run(Mode::LinkFit, args),
        Command::Network(args) => run(Mode::Network, args),
        Command::ListDesigns => {
            list_designs();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("simulate: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
