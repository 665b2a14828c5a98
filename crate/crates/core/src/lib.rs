//! Frequency-regulation dynamics of a power system in which a synchronous
//! generator is assisted by a grid-forming energy-storage system running
//! virtual-synchronous-machine control with SoC recovery.
//!
//! The crate has three layers:
//!
//! - [`lti`]: polynomial / rational-transfer-function arithmetic, frequency
//!   response, -3 dB bandwidth measurement, and final-value evaluation;
//! - [`system`] and [`analysis`]: construction of the load-to-frequency and
//!   load-to-power transfer functions, per-service steady-state energy
//!   accounting, and the bandwidth-separation check of the nested control
//!   loops;
//! - [`sim`]: fixed-step time-domain integration of the same block diagram
//!   with metric extraction (nadir, SoC drop, recovery settling).
//!
//! All values are per-unit on a single shared power base; time constants
//! are in seconds and angular frequencies in rad/s.

pub mod analysis;
pub mod error;
pub mod lti;
pub mod params;
pub mod sim;
pub mod system;

pub use analysis::{
    bandwidth_report, energy_report, energy_report_via_final_value, estimate_bandwidths,
    secondary_bandwidth_full_model, BandwidthEstimates, BandwidthReport, EnergyReport,
};
pub use error::{Error, Result};
pub use lti::{BandwidthSearch, Polynomial, RationalTransferFunction};
pub use params::{EssParams, SgParams, VsmParams};
pub use sim::{
    compute_metrics, derivative, run, run_decimated, Metrics, PowerFlows, Scenario,
    SimulationResult, SimulationSeries, SimulationState,
};
pub use system::{
    build_system, simplified_primary_model, simplified_secondary_model, simplified_soc_model,
    SystemModel,
};
