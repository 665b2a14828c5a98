use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gridfreq_cli::{
    cmd_bandwidth, cmd_bode, cmd_energy, cmd_simulate, cmd_sweep, parse_omega_range, BodeTarget,
    CliError, ScenarioConfig, SimulateOptions,
};

#[derive(Parser)]
#[command(
    name = "gridfreq",
    version,
    about = "Frequency regulation with grid-forming energy storage: \
             simulation, energy accounting, and loop-bandwidth analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a step-load experiment; write timeseries.csv and metrics.json.
    Simulate {
        /// Scenario config (JSON); omit for the built-in table1 profile.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Remove the ESS/VSM (synchronous generator alone).
        #[arg(long)]
        no_vsm: bool,
        /// Open the SoC recovery loop.
        #[arg(long)]
        no_recovery: bool,
        /// Record every Nth integration step (default: 10 ms spacing).
        #[arg(long)]
        decimation: Option<usize>,
    },
    /// Print the steady-state ESS energy report as JSON.
    Energy {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print the loop-bandwidth report with the separation verdict as JSON.
    Bandwidth {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Required ratio between adjacent loop bandwidths.
        #[arg(long, default_value_t = 2.0)]
        separation_factor: f64,
        /// Tertiary-control bandwidth to compare the SoC loop against, rad/s.
        #[arg(long)]
        third_control_bw: Option<f64>,
    },
    /// Write bode.csv for one transfer function.
    Bode {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Transfer function: gf, primary, secondary, or soc.
        #[arg(long)]
        which: BodeTarget,
        /// Angular frequency range lo:hi, rad/s.
        #[arg(long, default_value = "1e-4:1e4")]
        omega_range: String,
        /// Number of log-spaced grid points.
        #[arg(long, default_value_t = 400)]
        points: usize,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Re-run one scenario over a list of values for one numeric config key.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Numeric config key to vary (e.g. kp_e_pu).
        #[arg(long)]
        param: String,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

impl Command {
    fn execute(self) -> Result<(), CliError> {
        match self {
            Command::Simulate {
                config,
                out,
                no_vsm,
                no_recovery,
                decimation,
            } => {
                let config = ScenarioConfig::load(config.as_deref())?;
                let options = SimulateOptions {
                    no_vsm,
                    no_recovery,
                    decimation,
                };
                let result = cmd_simulate(&config, &out, options)?;
                for warning in &result.warnings {
                    eprintln!("warning: {warning}");
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&result.metrics).expect("metrics serialize")
                );
                Ok(())
            }
            Command::Energy { config } => {
                let config = ScenarioConfig::load(config.as_deref())?;
                let report = cmd_energy(&config)?;
                println!("{}", serde_json::to_string_pretty(&report).expect("report serialize"));
                Ok(())
            }
            Command::Bandwidth {
                config,
                separation_factor,
                third_control_bw,
            } => {
                let config = ScenarioConfig::load(config.as_deref())?;
                let report = cmd_bandwidth(&config, separation_factor, third_control_bw)?;
                println!("{}", serde_json::to_string_pretty(&report).expect("report serialize"));
                Ok(())
            }
            Command::Bode {
                config,
                which,
                omega_range,
                points,
                out,
            } => {
                let config = ScenarioConfig::load(config.as_deref())?;
                let range = parse_omega_range(&omega_range)?;
                let path = cmd_bode(&config, which, range, points, &out)?;
                println!("wrote {}", path.display());
                Ok(())
            }
            Command::Sweep {
                config,
                param,
                values,
                out,
            } => {
                let config = ScenarioConfig::load(config.as_deref())?;
                let rows = cmd_sweep(&config, &param, &values, &out)?;
                for row in &rows {
                    let settling = row
                        .metrics
                        .soc_settling_time_s
                        .map(|t| format!("{t:.2} s"))
                        .unwrap_or_else(|| "not settled".into());
                    println!(
                        "{param} = {}: nadir {:.4} Hz, SoC settling {settling}",
                        row.value, row.metrics.nadir_hz
                    );
                }
                println!("wrote {}", out.join("sweep_summary.csv").display());
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command.execute() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
