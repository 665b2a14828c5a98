//! Fixed-step time-domain integration of the SG+VSM block diagram with the
//! PI SoC recovery loop, plus metric extraction (frequency nadir, settling
//! of the SoC recovery, power-balance residual).
//!
//! State variables:
//! - `delta_f`: frequency deviation, p.u.
//! - `p_gov_sg_lag`: SG governor lag output (proportional + secondary), p.u.
//! - `z_sec`: SG secondary integrator, p.u.
//! - `p_vsm_lag`: VSM governor/recovery actuation lag output, p.u.
//! - `e_discharged`: net energy discharged by the ESS, p.u.*s.
//! - `z_rec`: SoC recovery integrator, p.u.
//!
//! The virtual inertia/damping power is recovered algebraically from the
//! swing right-hand side rather than by differentiating `delta_f`
//! numerically, so the recorded per-step power balance
//! `p_sg_total + p_ess = dP_L` is exact up to floating-point rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{EssParams, SgParams, VsmParams};

/// Width of the SoC band (fraction of capacity) inside which the recovery
/// integrator accumulates. Freezing the integrator during large excursions
/// keeps the slow integral trim from winding up over the frequency event,
/// which would otherwise stretch the recovery settling by hundreds of
/// seconds; inside the band the integral still removes small steady errors.
pub const RECOVERY_INTEGRATOR_BAND: f64 = 0.01;

/// SoC settling band, fraction of capacity.
pub const SOC_SETTLING_BAND: f64 = 0.002;

/// Target output sample spacing when no explicit decimation is given, s.
const DEFAULT_OUTPUT_SPACING: f64 = 0.01;

/// One step-load experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub sg: SgParams,
    /// `None` removes the ESS/VSM entirely (SG alone serves the load).
    pub vsm: Option<VsmParams>,
    pub ess: EssParams,
    /// Close the SoC recovery loop (has no effect without a VSM).
    pub recovery_enabled: bool,
    /// Instant of the load step, s.
    pub step_time: f64,
    /// Load step amplitude, p.u.; positive means load increase.
    pub delta_p_l: f64,
    /// Total simulated time, s.
    pub duration: f64,
    /// Integration step, s.
    pub dt: f64,
    pub base_frequency_hz: f64,
    /// Clamp ESS power to `+/- p_rating`.
    pub saturation_enabled: bool,
}

impl Scenario {
    /// The reference experiment: full system, 0.375 p.u. load increase at
    /// t = 10 s, recovery closed, 400 s horizon at 1 ms.
    pub fn table1() -> Self {
        Scenario {
            sg: SgParams::table1(),
            vsm: Some(VsmParams::table1()),
            ess: EssParams::table1(),
            recovery_enabled: true,
            step_time: 10.0,
            delta_p_l: 0.375,
            duration: 400.0,
            dt: 1e-3,
            base_frequency_hz: 60.0,
            saturation_enabled: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.sg.validate()?;
        if let Some(vsm) = &self.vsm {
            vsm.validate()?;
        }
        self.ess.validate()?;
        if self.dt.is_nan() || self.dt <= 0.0 || self.dt > 0.01 {
            return Err(Error::InvalidScenario {
                reason: format!("dt must lie in (0, 0.01] s, got {}", self.dt),
            });
        }
        if self.step_time.is_nan()
            || self.duration.is_nan()
            || self.step_time < 0.0
            || self.duration <= self.step_time
        {
            return Err(Error::InvalidScenario {
                reason: format!(
                    "need duration > step_time >= 0, got duration {} and step_time {}",
                    self.duration, self.step_time
                ),
            });
        }
        if self.delta_p_l.is_nan() || self.delta_p_l.abs() > 2.0 {
            return Err(Error::InvalidScenario {
                reason: format!("|delta_p_l| must be <= 2 p.u., got {}", self.delta_p_l),
            });
        }
        if self.base_frequency_hz.is_nan() || self.base_frequency_hz <= 0.0 {
            return Err(Error::InvalidScenario {
                reason: format!("base frequency must be positive, got {}", self.base_frequency_hz),
            });
        }
        Ok(())
    }

    /// Load disturbance at time `t` (small tolerance so that a step instant
    /// landing exactly on the integration grid belongs to the "after" side).
    pub fn load_at(&self, t: f64) -> f64 {
        if t - self.step_time >= -1e-9 {
            self.delta_p_l
        } else {
            0.0
        }
    }
}

/// Integrator states of the block diagram.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SimulationState {
    pub delta_f: f64,
    pub p_gov_sg_lag: f64,
    pub z_sec: f64,
    pub p_vsm_lag: f64,
    pub e_discharged: f64,
    pub z_rec: f64,
}

impl SimulationState {
    fn is_finite(&self) -> bool {
        self.delta_f.is_finite()
            && self.p_gov_sg_lag.is_finite()
            && self.z_sec.is_finite()
            && self.p_vsm_lag.is_finite()
            && self.e_discharged.is_finite()
            && self.z_rec.is_finite()
    }

    fn add_scaled(&self, factor: f64, rate: &SimulationState) -> SimulationState {
        SimulationState {
            delta_f: self.delta_f + factor * rate.delta_f,
            p_gov_sg_lag: self.p_gov_sg_lag + factor * rate.p_gov_sg_lag,
            z_sec: self.z_sec + factor * rate.z_sec,
            p_vsm_lag: self.p_vsm_lag + factor * rate.p_vsm_lag,
            e_discharged: self.e_discharged + factor * rate.e_discharged,
            z_rec: self.z_rec + factor * rate.z_rec,
        }
    }
}

/// Algebraic outputs accompanying one derivative evaluation.
#[derive(Debug, Clone, Copy, Default)]
pub struct PowerFlows {
    /// Total SG power (governor + secondary + inertia + damping), p.u.
    pub p_sg_total: f64,
    /// Virtual inertia + damping power of the ESS, p.u.
    pub p_hd: f64,
    /// Virtual governor power of the ESS (lag output), p.u.
    pub p_gov_vsm: f64,
    /// SoC recovery power command, p.u. (negative = charging).
    pub p_rec: f64,
    /// Net ESS power toward the grid, p.u.
    pub p_ess: f64,
    /// State of charge, fraction.
    pub soc: f64,
    /// Load disturbance seen at this instant, p.u.
    pub load: f64,
}

/// State derivative and algebraic power flows at time `t`.
pub fn derivative(
    state: &SimulationState,
    t: f64,
    scenario: &Scenario,
) -> Result<(SimulationState, PowerFlows)> {
    if !state.is_finite() {
        return Err(Error::NonFiniteState { t });
    }
    Ok(dynamics(state, scenario.load_at(t), scenario))
}

/// The vector field with the load held at an explicit value. `run`
/// evaluates the load once per integration interval so that a step aligned
/// with the grid never splits a Runge-Kutta stage across the discontinuity.
fn dynamics(state: &SimulationState, load: f64, scenario: &Scenario) -> (SimulationState, PowerFlows) {
    let sg = &scenario.sg;
    let ess = &scenario.ess;
    let vsm = scenario.vsm.as_ref();
    let (h_vsm, d_vsm, kp_vsm, t_vsm) = match vsm {
        Some(v) => (v.h_vsm, v.d_vsm, v.kp_vsm, v.t_vsm),
        None => (0.0, 0.0, 0.0, 1.0),
    };

    let soc = ess.soc_ini - state.e_discharged / ess.e_nom;
    let soc_error = ess.soc_ref - soc;

    let (p_rec, dz_rec) = if scenario.recovery_enabled && vsm.is_some() {
        let dz = if soc_error.abs() < RECOVERY_INTEGRATOR_BAND {
            ess.ki_e * soc_error
        } else {
            0.0
        };
        (-(ess.kp_e * soc_error + state.z_rec), dz)
    } else {
        (0.0, 0.0)
    };

    let h_total = sg.h_sg + h_vsm;
    let d_total = sg.d_sg + d_vsm;
    let mut d_delta_f =
        (state.p_gov_sg_lag + state.p_vsm_lag - d_total * state.delta_f - load) / h_total;
    let mut p_hd = -(h_vsm * d_delta_f + d_vsm * state.delta_f);
    let mut p_ess = p_hd + state.p_vsm_lag;

    if scenario.saturation_enabled && vsm.is_some() && p_ess.abs() > ess.p_rating {
        // Clamp the ESS injection and let the SG inertia alone absorb the
        // residual imbalance; the recorded balance stays exact.
        p_ess = ess.p_rating.copysign(p_ess);
        d_delta_f = (state.p_gov_sg_lag + p_ess - sg.d_sg * state.delta_f - load) / sg.h_sg;
        p_hd = p_ess - state.p_vsm_lag;
    }

    let rate = SimulationState {
        delta_f: d_delta_f,
        p_gov_sg_lag: (-sg.kp_sg * state.delta_f + state.z_sec - state.p_gov_sg_lag) / sg.t_sg,
        z_sec: -sg.ki_sg * state.delta_f,
        p_vsm_lag: if vsm.is_some() {
            (-kp_vsm * state.delta_f + p_rec - state.p_vsm_lag) / t_vsm
        } else {
            0.0
        },
        e_discharged: p_ess,
        z_rec: dz_rec,
    };
    let flows = PowerFlows {
        p_sg_total: state.p_gov_sg_lag - sg.h_sg * d_delta_f - sg.d_sg * state.delta_f,
        p_hd,
        p_gov_vsm: state.p_vsm_lag,
        p_rec,
        p_ess,
        soc,
        load,
    };
    (rate, flows)
}

/// Recorded time series on a uniform output grid.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SimulationSeries {
    pub time_s: Vec<f64>,
    pub frequency_hz: Vec<f64>,
    pub p_sg: Vec<f64>,
    pub p_hd: Vec<f64>,
    pub p_gov_vsm: Vec<f64>,
    pub p_rec: Vec<f64>,
    pub p_ess: Vec<f64>,
    pub soc: Vec<f64>,
}

impl SimulationSeries {
    fn with_capacity(n: usize) -> Self {
        SimulationSeries {
            time_s: Vec::with_capacity(n),
            frequency_hz: Vec::with_capacity(n),
            p_sg: Vec::with_capacity(n),
            p_hd: Vec::with_capacity(n),
            p_gov_vsm: Vec::with_capacity(n),
            p_rec: Vec::with_capacity(n),
            p_ess: Vec::with_capacity(n),
            soc: Vec::with_capacity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.time_s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time_s.is_empty()
    }

    fn push(&mut self, t: f64, base_frequency_hz: f64, state: &SimulationState, flows: &PowerFlows) {
        self.time_s.push(t);
        self.frequency_hz.push(base_frequency_hz * (1.0 + state.delta_f));
        self.p_sg.push(flows.p_sg_total);
        self.p_hd.push(flows.p_hd);
        self.p_gov_vsm.push(flows.p_gov_vsm);
        self.p_rec.push(flows.p_rec);
        self.p_ess.push(flows.p_ess);
        self.soc.push(flows.soc);
    }

    fn decimate(&self, every: usize) -> SimulationSeries {
        let take = |v: &[f64]| v.iter().copied().step_by(every).collect::<Vec<_>>();
        SimulationSeries {
            time_s: take(&self.time_s),
            frequency_hz: take(&self.frequency_hz),
            p_sg: take(&self.p_sg),
            p_hd: take(&self.p_hd),
            p_gov_vsm: take(&self.p_gov_vsm),
            p_rec: take(&self.p_rec),
            p_ess: take(&self.p_ess),
            soc: take(&self.soc),
        }
    }
}

/// Scalar metrics of one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub nadir_hz: f64,
    pub nadir_time_s: f64,
    pub freq_steady_hz: f64,
    pub soc_min: f64,
    pub soc_final: f64,
    /// First time after the step from which the SoC stays inside the
    /// settling band; `None` when it never does within the horizon.
    pub soc_settling_time_s: Option<f64>,
    pub max_power_balance_residual: f64,
}

/// One completed experiment: output series (possibly decimated), metrics
/// computed at full integration resolution, and any step-size warnings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulationResult {
    pub series: SimulationSeries,
    pub metrics: Metrics,
    pub warnings: Vec<String>,
}

/// Integrate the scenario with output decimated to roughly 10 ms spacing.
pub fn run(scenario: &Scenario) -> Result<SimulationResult> {
    let decimation = (DEFAULT_OUTPUT_SPACING / scenario.dt).round().max(1.0) as usize;
    run_decimated(scenario, decimation)
}

/// Integrate the scenario with classical fixed-step fourth-order
/// Runge-Kutta, recording every `decimation`-th integration step.
///
/// Metrics are always extracted from the full-resolution trajectory so that
/// decimation cannot shift the nadir or the settling instant.
pub fn run_decimated(scenario: &Scenario, decimation: usize) -> Result<SimulationResult> {
    scenario.validate()?;
    if decimation == 0 {
        return Err(Error::InvalidScenario {
            reason: "decimation must be at least 1".into(),
        });
    }

    let mut warnings = Vec::new();
    if scenario.dt > scenario.sg.t_sg / 10.0 {
        warnings.push(format!(
            "dt = {} s exceeds t_sg/10 = {} s; governor lag may be under-resolved",
            scenario.dt,
            scenario.sg.t_sg / 10.0
        ));
    }
    if let Some(vsm) = &scenario.vsm {
        if scenario.dt > vsm.t_vsm / 10.0 {
            warnings.push(format!(
                "dt = {} s exceeds t_vsm/10 = {} s; VSM lag may be under-resolved",
                scenario.dt,
                vsm.t_vsm / 10.0
            ));
        }
    }

    let dt = scenario.dt;
    let steps = (scenario.duration / dt).round() as usize;
    let mut state = SimulationState::default();
    let mut full = SimulationSeries::with_capacity(steps + 1);

    for i in 0..=steps {
        let t = i as f64 * dt;
        // The load is sampled at the interval start and held for all four
        // stages: an on-grid step instant then never lands inside a stage.
        let load = scenario.load_at(t);
        let (k1, flows) = dynamics(&state, load, scenario);
        full.push(t, scenario.base_frequency_hz, &state, &flows);
        if i == steps {
            break;
        }
        let (k2, _) = dynamics(&state.add_scaled(0.5 * dt, &k1), load, scenario);
        let (k3, _) = dynamics(&state.add_scaled(0.5 * dt, &k2), load, scenario);
        let (k4, _) = dynamics(&state.add_scaled(dt, &k3), load, scenario);
        state = SimulationState {
            delta_f: state.delta_f
                + dt / 6.0 * (k1.delta_f + 2.0 * k2.delta_f + 2.0 * k3.delta_f + k4.delta_f),
            p_gov_sg_lag: state.p_gov_sg_lag
                + dt / 6.0
                    * (k1.p_gov_sg_lag
                        + 2.0 * k2.p_gov_sg_lag
                        + 2.0 * k3.p_gov_sg_lag
                        + k4.p_gov_sg_lag),
            z_sec: state.z_sec + dt / 6.0 * (k1.z_sec + 2.0 * k2.z_sec + 2.0 * k3.z_sec + k4.z_sec),
            p_vsm_lag: state.p_vsm_lag
                + dt / 6.0
                    * (k1.p_vsm_lag + 2.0 * k2.p_vsm_lag + 2.0 * k3.p_vsm_lag + k4.p_vsm_lag),
            e_discharged: state.e_discharged
                + dt / 6.0
                    * (k1.e_discharged
                        + 2.0 * k2.e_discharged
                        + 2.0 * k3.e_discharged
                        + k4.e_discharged),
            z_rec: state.z_rec + dt / 6.0 * (k1.z_rec + 2.0 * k2.z_rec + 2.0 * k3.z_rec + k4.z_rec),
        };
        if !state.is_finite() {
            return Err(Error::NonFiniteState { t: t + dt });
        }
    }

    let metrics = compute_metrics(&full, scenario)?;
    // SoC bounds are monitored, not enforced: the linear model happily
    // drives the storage past empty or full, so flag it for the caller.
    let soc_max = full.soc.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if metrics.soc_min < 0.0 || soc_max > 1.0 {
        warnings.push(format!(
            "SoC left [0, 1] (range [{:.4}, {:.4}]); the linear ESS model does not enforce capacity limits",
            metrics.soc_min, soc_max
        ));
    }
    let series = if decimation > 1 {
        full.decimate(decimation)
    } else {
        full
    };
    Ok(SimulationResult {
        series,
        metrics,
        warnings,
    })
}

/// Extract metrics from a recorded series.
///
/// Nadir is the global minimum of the frequency series; the steady
/// frequency is the mean of the last 5% of samples; the settling time is
/// the first instant after the step from which the SoC stays inside the
/// settling band until the end of the series.
pub fn compute_metrics(series: &SimulationSeries, scenario: &Scenario) -> Result<Metrics> {
    if series.is_empty() {
        return Err(Error::InvalidScenario {
            reason: "cannot compute metrics of an empty series".into(),
        });
    }
    let n = series.len();

    let (nadir_idx, nadir_hz) = series
        .frequency_hz
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, &v)| {
            if v < bv {
                (i, v)
            } else {
                (bi, bv)
            }
        });

    let tail = (n as f64 * 0.05).ceil().max(1.0) as usize;
    let freq_steady_hz =
        series.frequency_hz[n - tail..].iter().sum::<f64>() / tail as f64;

    let soc_min = series.soc.iter().copied().fold(f64::INFINITY, f64::min);
    let soc_final = *series.soc.last().expect("non-empty");

    // Walk back over the trailing in-band run; settle at its start (but not
    // before the step instant). A trailing violation means "never settled".
    let in_band = |soc: f64| (soc - scenario.ess.soc_ref).abs() < SOC_SETTLING_BAND;
    let soc_settling_time_s = if !in_band(soc_final) {
        None
    } else {
        let mut first_in_band = n - 1;
        while first_in_band > 0 && in_band(series.soc[first_in_band - 1]) {
            first_in_band -= 1;
        }
        Some(series.time_s[first_in_band].max(scenario.step_time))
    };

    let max_power_balance_residual = series
        .time_s
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            (series.p_sg[i] + series.p_ess[i] - scenario.load_at(t)).abs()
        })
        .fold(0.0, f64::max);

    Ok(Metrics {
        nadir_hz,
        nadir_time_s: series.time_s[nadir_idx],
        freq_steady_hz,
        soc_min,
        soc_final,
        soc_settling_time_s,
        max_power_balance_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn equilibrium_has_zero_derivative() {
        let mut scenario = Scenario::table1();
        scenario.delta_p_l = 0.0;
        let state = SimulationState::default();
        let (rate, flows) = derivative(&state, 20.0, &scenario).unwrap();
        assert_eq!(rate, SimulationState::default());
        assert_eq!(flows.p_ess, 0.0);
        assert_eq!(flows.p_sg_total, 0.0);
    }

    #[test]
    fn swing_acceleration_at_step_instant() {
        // Only the load term is active with zero state: -0.375 / 7.5.
        let scenario = Scenario::table1();
        let (rate, _) = derivative(&SimulationState::default(), 10.0, &scenario).unwrap();
        assert_relative_eq!(rate.delta_f, -0.05, max_relative = 1e-14);
    }

    #[test]
    fn recovery_only_regime_charges() {
        // Flat frequency, SoC at 0.45: p_rec = -0.4 * 0.05 before the
        // integrator acts.
        let mut scenario = Scenario::table1();
        scenario.delta_p_l = 0.0;
        let state = SimulationState {
            e_discharged: 0.05 * scenario.ess.e_nom, // SoC = 0.45
            ..SimulationState::default()
        };
        let (rate, flows) = derivative(&state, 0.0, &scenario).unwrap();
        assert_relative_eq!(flows.p_rec, -0.02, max_relative = 1e-14);
        assert_relative_eq!(flows.soc, 0.45, max_relative = 1e-14);
        // The recovery command still has to pass the actuation lag before
        // it charges, so dSoC/dt responds to the lag state, not p_rec.
        assert_relative_eq!(rate.p_vsm_lag, -0.02 / 0.3, max_relative = 1e-14);
        // Outside the integrator band the integral trim stays frozen.
        assert_eq!(rate.z_rec, 0.0);
    }

    #[test]
    fn recovery_integrator_acts_inside_band() {
        let mut scenario = Scenario::table1();
        scenario.delta_p_l = 0.0;
        let state = SimulationState {
            e_discharged: 0.005 * scenario.ess.e_nom, // SoC = 0.495
            ..SimulationState::default()
        };
        let (rate, _) = derivative(&state, 0.0, &scenario).unwrap();
        assert_relative_eq!(rate.z_rec, 0.002 * 0.005, max_relative = 1e-14);
    }

    #[test]
    fn non_finite_state_is_reported() {
        let scenario = Scenario::table1();
        let state = SimulationState {
            delta_f: f64::NAN,
            ..SimulationState::default()
        };
        assert!(matches!(
            derivative(&state, 3.0, &scenario),
            Err(Error::NonFiniteState { .. })
        ));
    }

    #[test]
    fn zero_disturbance_stays_flat() {
        let mut scenario = Scenario::table1();
        scenario.delta_p_l = 0.0;
        scenario.duration = 20.0;
        let result = run(&scenario).unwrap();
        assert!(result.series.p_ess.iter().all(|&p| p == 0.0));
        assert!(result.series.p_sg.iter().all(|&p| p == 0.0));
        assert!(result.series.soc.iter().all(|&s| s == 0.5));
        assert_eq!(result.metrics.nadir_hz, 60.0);
        assert_eq!(result.metrics.nadir_time_s, 0.0);
        assert_eq!(result.metrics.soc_settling_time_s, Some(10.0));
    }

    #[test]
    fn invalid_scenario_rejected() {
        let mut scenario = Scenario::table1();
        scenario.dt = 0.02;
        assert!(matches!(run(&scenario), Err(Error::InvalidScenario { .. })));
        let mut scenario = Scenario::table1();
        scenario.duration = 5.0; // < step_time
        assert!(matches!(run(&scenario), Err(Error::InvalidScenario { .. })));
        let mut scenario = Scenario::table1();
        scenario.delta_p_l = 3.0;
        assert!(matches!(run(&scenario), Err(Error::InvalidScenario { .. })));
    }

    #[test]
    fn step_size_warning_for_fast_lag() {
        let mut scenario = Scenario::table1();
        scenario.sg.t_sg = 0.05;
        scenario.dt = 0.01;
        scenario.duration = 15.0;
        let result = run(&scenario).unwrap();
        assert!(!result.warnings.is_empty());
    }

    #[test]
    fn settling_absent_when_series_ends_out_of_band() {
        let scenario = Scenario::table1();
        let series = SimulationSeries {
            time_s: vec![0.0, 1.0, 2.0],
            frequency_hz: vec![60.0, 59.9, 59.95],
            p_sg: vec![0.0; 3],
            p_hd: vec![0.0; 3],
            p_gov_vsm: vec![0.0; 3],
            p_rec: vec![0.0; 3],
            p_ess: vec![0.0; 3],
            soc: vec![0.5, 0.4, 0.45],
        };
        let mut sc = scenario.clone();
        sc.step_time = 0.5;
        sc.delta_p_l = 0.0;
        let metrics = compute_metrics(&series, &sc).unwrap();
        assert_eq!(metrics.soc_settling_time_s, None);
        assert_eq!(metrics.nadir_hz, 59.9);
        assert_eq!(metrics.nadir_time_s, 1.0);
        assert_eq!(metrics.soc_min, 0.4);
    }

    #[test]
    fn soc_leaving_bounds_is_flagged() {
        let mut scenario = Scenario::table1();
        scenario.recovery_enabled = false;
        scenario.ess.e_nom = 2.0; // 1.875 p.u.*s discharge empties this unit
        scenario.duration = 200.0;
        let result = run(&scenario).unwrap();
        assert!(result.metrics.soc_min < 0.0);
        assert!(result.warnings.iter().any(|w| w.contains("SoC left [0, 1]")));
    }

    #[test]
    fn saturation_clamps_ess_power() {
        let mut scenario = Scenario::table1();
        scenario.saturation_enabled = true;
        scenario.ess.p_rating = 0.2;
        scenario.delta_p_l = 1.0;
        scenario.duration = 40.0;
        let result = run(&scenario).unwrap();
        let max_ess = result.series.p_ess.iter().fold(0.0_f64, |m, p| m.max(p.abs()));
        assert!(max_ess <= 0.2 + 1e-12, "ESS power {max_ess} exceeds rating");
        // Balance stays exact even while clamped.
        assert!(result.metrics.max_power_balance_residual < 1e-6);
    }

    #[test]
    fn decimated_output_grid() {
        let mut scenario = Scenario::table1();
        scenario.duration = 30.0;
        let result = run_decimated(&scenario, 10).unwrap();
        // floor(duration / (dt * decimation)) + 1 rows
        assert_eq!(result.series.len(), 3001);
        assert_relative_eq!(result.series.time_s[1], 0.01, max_relative = 1e-12);
    }
}
