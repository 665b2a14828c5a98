//! Implementations behind the CLI subcommands. Each function returns the
//! data it printed or wrote so integration tests can drive the library
//! surface directly; `main` only parses arguments and serializes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use gridfreq::{
    bandwidth_report, build_system, energy_report, energy_report_via_final_value, run_decimated,
    secondary_bandwidth_full_model, simplified_primary_model, simplified_secondary_model,
    simplified_soc_model, EnergyReport, RationalTransferFunction, SimulationResult,
};

use crate::config::ScenarioConfig;
use crate::CliError;

/// Format a float with 17 significant digits so CSV consumers can run
/// bit-level convergence checks.
fn full_precision(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SimulateOptions {
    pub no_vsm: bool,
    pub no_recovery: bool,
    pub decimation: Option<usize>,
}

/// Run one scenario and write `timeseries.csv` and `metrics.json` into
/// `out_dir`.
pub fn cmd_simulate(
    config: &ScenarioConfig,
    out_dir: &Path,
    options: SimulateOptions,
) -> Result<SimulationResult, CliError> {
    let mut scenario = config.scenario();
    if options.no_vsm {
        scenario.vsm = None;
    }
    if options.no_recovery {
        scenario.recovery_enabled = false;
    }
    let decimation = options
        .decimation
        .unwrap_or_else(|| (0.01 / scenario.dt).round().max(1.0) as usize);
    if decimation == 0 {
        return Err(CliError::Config("decimation must be at least 1".into()));
    }

    let result = run_decimated(&scenario, decimation)?;

    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    write_timeseries_csv(&out_dir.join("timeseries.csv"), &result)?;
    write_json(&out_dir.join("metrics.json"), &serde_json::to_value(result.metrics).unwrap())?;
    Ok(result)
}

fn write_timeseries_csv(path: &Path, result: &SimulationResult) -> Result<(), CliError> {
    let series = &result.series;
    let mut out = String::with_capacity(series.len() * 160);
    out.push_str("time_s,freq_hz,p_sg_pu,p_hd_pu,p_gov_vsm_pu,p_rec_pu,p_ess_pu,soc\n");
    for i in 0..series.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            full_precision(series.time_s[i]),
            full_precision(series.frequency_hz[i]),
            full_precision(series.p_sg[i]),
            full_precision(series.p_hd[i]),
            full_precision(series.p_gov_vsm[i]),
            full_precision(series.p_rec[i]),
            full_precision(series.p_ess[i]),
            full_precision(series.soc[i]),
        );
    }
    fs::write(path, out).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).unwrap();
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn energy_fields(report: &EnergyReport) -> serde_json::Value {
    json!({
        "delta_e_hd_pu_s": report.delta_e_hd,
        "delta_e_gov_pu_s": report.delta_e_gov,
        "delta_e_vsm_pu_s": report.delta_e_vsm,
        "delta_soc": report.delta_soc,
    })
}

/// Steady-state energy report computed by both routes, with an agreement
/// figure between them.
pub fn cmd_energy(config: &ScenarioConfig) -> Result<serde_json::Value, CliError> {
    let sg = config.sg();
    let vsm = config.vsm_or_disabled();
    let ess = config.ess();
    let delta_p_l = config.delta_p_l_pu;

    let closed = energy_report(&sg, &vsm, &ess, delta_p_l)?;
    let model = build_system(sg, vsm, config.base_frequency_hz)?;
    let via_fv = energy_report_via_final_value(&model, &ess, delta_p_l)?;

    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1e-12);
    let agreement_rel_error = [
        rel(closed.delta_e_hd, via_fv.delta_e_hd),
        rel(closed.delta_e_gov, via_fv.delta_e_gov),
        rel(closed.delta_e_vsm, via_fv.delta_e_vsm),
        rel(closed.delta_soc, via_fv.delta_soc),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    Ok(json!({
        "delta_p_l_pu": delta_p_l,
        "closed_form": energy_fields(&closed),
        "final_value": energy_fields(&via_fv),
        "agreement_rel_error": agreement_rel_error,
        "agreement_ok": agreement_rel_error <= 1e-9,
    }))
}

/// Bandwidth report of the three loops, optionally compared against a
/// user-supplied tertiary-control bandwidth.
pub fn cmd_bandwidth(
    config: &ScenarioConfig,
    separation_factor: f64,
    third_control_bw: Option<f64>,
) -> Result<serde_json::Value, CliError> {
    let sg = config.sg();
    let vsm = config.vsm_or_disabled();
    let ess = config.ess();

    let report = bandwidth_report(&sg, &vsm, &ess, separation_factor)?;
    let model = build_system(sg, vsm, config.base_frequency_hz)?;
    let secondary_full_model = secondary_bandwidth_full_model(&model)?;

    let soc_above_third = third_control_bw.map(|third| report.soc_analytic > third);
    Ok(json!({
        "primary_analytic_rad_s": report.primary_analytic,
        "secondary_analytic_rad_s": report.secondary_analytic,
        "soc_analytic_rad_s": report.soc_analytic,
        "primary_measured_rad_s": report.primary_measured,
        "secondary_measured_rad_s": report.secondary_measured,
        "soc_measured_rad_s": report.soc_measured,
        "secondary_full_model_rad_s": secondary_full_model,
        "separation_factor": report.separation_factor,
        "ratio_primary_over_secondary": report.separation_ratios.0,
        "ratio_secondary_over_soc": report.separation_ratios.1,
        "separation_ok": report.separation_ok,
        "third_control_bw_rad_s": third_control_bw,
        "soc_above_third": soc_above_third,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodeTarget {
    Gf,
    Primary,
    Secondary,
    Soc,
}

impl std::str::FromStr for BodeTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gf" => Ok(BodeTarget::Gf),
            "primary" => Ok(BodeTarget::Primary),
            "secondary" => Ok(BodeTarget::Secondary),
            "soc" => Ok(BodeTarget::Soc),
            other => Err(format!("unknown transfer function `{other}` (use gf, primary, secondary, or soc)")),
        }
    }
}

/// Parse an `lo:hi` angular-frequency range.
pub fn parse_omega_range(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Config(format!("omega range must be `lo:hi` with 0 < lo < hi, got `{text}`"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi > lo) {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Write `bode.csv` (omega_rad_s, magnitude_db, phase_deg) for the selected
/// transfer function over a log-spaced grid. A probe landing on a pole
/// produces a marker row with blank magnitude and phase.
pub fn cmd_bode(
    config: &ScenarioConfig,
    target: BodeTarget,
    omega_range: (f64, f64),
    points: usize,
    out_dir: &Path,
) -> Result<PathBuf, CliError> {
    if points < 2 {
        return Err(CliError::Config(format!("need at least 2 points, got {points}")));
    }
    let (lo, hi) = omega_range;

    let sg = config.sg();
    let vsm = config.vsm_or_disabled();
    let tf: RationalTransferFunction = match target {
        BodeTarget::Gf => build_system(sg, vsm, config.base_frequency_hz)?.g_f,
        BodeTarget::Primary => simplified_primary_model(&sg, &vsm)?,
        BodeTarget::Secondary => simplified_secondary_model(&sg, &vsm)?,
        BodeTarget::Soc => simplified_soc_model(&config.ess())?,
    };

    let mut out = String::with_capacity(points * 72);
    out.push_str("omega_rad_s,magnitude_db,phase_deg\n");
    for i in 0..points {
        let frac = i as f64 / (points - 1) as f64;
        let omega = lo * (hi / lo).powf(frac);
        match (tf.magnitude_db(omega), tf.phase_deg(omega)) {
            (Ok(mag), Ok(phase)) => {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    full_precision(omega),
                    full_precision(mag),
                    full_precision(phase)
                );
            }
            _ => {
                // pole hit: keep the row as an explicit blank-magnitude marker
                let _ = writeln!(out, "{},,", full_precision(omega));
            }
        }
    }

    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    let path = out_dir.join("bode.csv");
    fs::write(&path, out)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// Outcome of one sweep run.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    pub metrics: gridfreq::Metrics,
}

/// Run one simulation per parameter value (in parallel), write one
/// `metrics.json` per value plus `sweep_summary.csv`.
pub fn cmd_sweep(
    config: &ScenarioConfig,
    param: &str,
    values: &[f64],
    out_dir: &Path,
) -> Result<Vec<SweepRow>, CliError> {
    if values.is_empty() {
        return Err(CliError::Config("sweep needs at least one value".into()));
    }
    // Validate the key before spawning anything.
    config.clone().set_numeric(param, config_probe(config, param)?)?;

    let results: Vec<Result<SimulationResult, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = values
            .iter()
            .map(|&value| {
                let mut swept = config.clone();
                scope.spawn(move || -> Result<SimulationResult, CliError> {
                    swept.set_numeric(param, value)?;
                    let scenario = swept.scenario();
                    let decimation = (0.01 / scenario.dt).round().max(1.0) as usize;
                    Ok(run_decimated(&scenario, decimation)?)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });

    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;

    let mut rows = Vec::with_capacity(values.len());
    let mut summary = String::from("value,nadir_hz,soc_settling_time_s\n");
    for (&value, result) in values.iter().zip(results) {
        let result = result?;
        let run_dir = out_dir.join(format!("{param}_{value}"));
        fs::create_dir_all(&run_dir)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", run_dir.display())))?;
        write_json(
            &run_dir.join("metrics.json"),
            &serde_json::to_value(result.metrics).unwrap(),
        )?;
        let settling = result
            .metrics
            .soc_settling_time_s
            .map(full_precision)
            .unwrap_or_default();
        let _ = writeln!(
            summary,
            "{},{},{settling}",
            full_precision(value),
            full_precision(result.metrics.nadir_hz)
        );
        rows.push(SweepRow {
            value,
            metrics: result.metrics,
        });
    }
    fs::write(out_dir.join("sweep_summary.csv"), summary)
        .map_err(|e| CliError::Io(format!("cannot write sweep_summary.csv: {e}")))?;
    Ok(rows)
}

/// Current value of a numeric key, doubling as the key-existence check.
fn config_probe(config: &ScenarioConfig, key: &str) -> Result<f64, CliError> {
    let value = serde_json::to_value(config).unwrap();
    value
        .get(key)
        .and_then(|v| v.as_f64())
        .ok_or_else(|| {
            CliError::Config(format!(
                "unknown sweep parameter `{key}`; numeric keys: {}",
                ScenarioConfig::numeric_keys().join(", ")
            ))
        })
}
