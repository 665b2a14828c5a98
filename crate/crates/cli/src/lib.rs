//! Library surface of the `gridfreq` CLI: scenario configuration files and
//! the subcommand implementations, kept separate from argument parsing so
//! tests can call them directly.

pub mod commands;
pub mod config;

pub use commands::{
    cmd_bandwidth, cmd_bode, cmd_energy, cmd_simulate, cmd_sweep, parse_omega_range, BodeTarget,
    SimulateOptions, SweepRow,
};
pub use config::ScenarioConfig;

/// CLI-level error with its process exit code.
#[derive(Debug, Clone)]
pub enum CliError {
    /// Bad configuration file, key, or command argument (exit 2).
    Config(String),
    /// Integration blow-up (exit 3).
    Integration(String),
    /// A requested steady-state value diverges (exit 4).
    Divergence(String),
    /// A loop model is degenerate for these parameters (exit 5).
    Degenerate(String),
    /// Filesystem failure (exit 1).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Integration(_) => 3,
            CliError::Divergence(_) => 4,
            CliError::Degenerate(_) => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Integration(msg) => write!(f, "integration error: {msg}"),
            CliError::Divergence(msg) => write!(f, "{msg}"),
            CliError::Degenerate(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<gridfreq::Error> for CliError {
    fn from(err: gridfreq::Error) -> Self {
        use gridfreq::Error as E;
        match &err {
            E::InvalidParameter { .. } | E::InvalidScenario { .. } => {
                CliError::Config(err.to_string())
            }
            E::NonFiniteState { .. } => CliError::Integration(err.to_string()),
            E::Divergence { .. } | E::Unstable { .. } => CliError::Divergence(err.to_string()),
            E::DegenerateModel { .. } | E::NoCrossing { .. } | E::PoleHit { .. } => {
                CliError::Degenerate(err.to_string())
            }
        }
    }
}
