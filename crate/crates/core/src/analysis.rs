//! Steady-state energy accounting for the VSM services and bandwidth
//! analysis of the three nested control loops (primary frequency,
//! secondary frequency, SoC recovery).
//!
//! Energy figures are available through two independent routes: closed-form
//! expressions in the gains, and the final-value theorem applied to the
//! load-to-power transfer functions integrated once. The two must agree to
//! floating-point accuracy; tests and the CLI cross-check them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{EssParams, SgParams, VsmParams};
use crate::system::{
    simplified_primary_model, simplified_secondary_model, simplified_soc_model, SystemModel,
};

/// Steady-state energy discharged by the ESS for each service after a load
/// step, in p.u.*s. Positive values mean net discharge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    /// Energy spent in virtual inertia and damping.
    pub delta_e_hd: f64,
    /// Energy spent in virtual governor response.
    pub delta_e_gov: f64,
    /// Total ESS energy variation (`delta_e_hd + delta_e_gov`).
    pub delta_e_vsm: f64,
    /// Total as a fraction of capacity (`delta_e_vsm / e_nom`).
    pub delta_soc: f64,
    /// The load disturbance the report was computed for, p.u.
    pub delta_p_l: f64,
}

/// Closed-form steady-state energy variation: the damping and governor
/// services each discharge in proportion to their gain and inversely to the
/// SG secondary integral gain, which is what ultimately relieves the ESS.
pub fn energy_report(
    sg: &SgParams,
    vsm: &VsmParams,
    ess: &EssParams,
    delta_p_l: f64,
) -> Result<EnergyReport> {
    sg.validate()?;
    vsm.validate()?;
    ess.validate()?;
    if sg.ki_sg <= 0.0 {
        return Err(Error::Divergence {
            reason: "ESS energy diverges when ki_sg = 0: without SG secondary action \
                     the damping/governor services supply the load change forever"
                .into(),
        });
    }
    let delta_e_hd = vsm.d_vsm / sg.ki_sg * delta_p_l;
    let delta_e_gov = vsm.kp_vsm / sg.ki_sg * delta_p_l;
    // Summing the two services keeps the report identity exact in floating
    // point, not just algebraically.
    let delta_e_vsm = delta_e_hd + delta_e_gov;
    Ok(EnergyReport {
        delta_e_hd,
        delta_e_gov,
        delta_e_vsm,
        delta_soc: delta_e_vsm / ess.e_nom,
        delta_p_l,
    })
}

/// Same report computed through the transfer-function machinery: each
/// energy is the final value of the step response of the corresponding
/// load-to-power transfer function divided by `s`.
pub fn energy_report_via_final_value(
    model: &SystemModel,
    ess: &EssParams,
    delta_p_l: f64,
) -> Result<EnergyReport> {
    ess.validate()?;
    if !model.g_f.is_stable() {
        return Err(Error::Unstable {
            real_part: model
                .g_f
                .denominator()
                .roots()
                .iter()
                .map(|r| r.re)
                .fold(f64::NEG_INFINITY, f64::max),
        });
    }
    let delta_e_hd = model
        .tf_p_hd
        .integrated()
        .final_value_of_step_response(delta_p_l)?;
    let delta_e_gov = model
        .tf_p_gov
        .integrated()
        .final_value_of_step_response(delta_p_l)?;
    let delta_e_vsm = delta_e_hd + delta_e_gov;
    Ok(EnergyReport {
        delta_e_hd,
        delta_e_gov,
        delta_e_vsm,
        delta_soc: delta_e_vsm / ess.e_nom,
        delta_p_l,
    })
}

/// Closed-form bandwidths of the three nested loops, rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandwidthEstimates {
    pub primary: f64,
    pub secondary: f64,
    pub soc: f64,
}

/// The three closed-form loop bandwidths:
/// primary `= (kp_sg + kp_vsm + d_sg + d_vsm)/(h_sg + h_vsm)`,
/// secondary `= ki_sg/(kp_sg + kp_vsm + d_sg + d_vsm)`,
/// SoC `= kp_e/e_nom`.
pub fn estimate_bandwidths(
    sg: &SgParams,
    vsm: &VsmParams,
    ess: &EssParams,
) -> Result<BandwidthEstimates> {
    let gains = sg.kp_sg + vsm.kp_vsm + sg.d_sg + vsm.d_vsm;
    let h_total = sg.h_sg + vsm.h_vsm;
    if h_total <= 0.0 {
        return Err(Error::DegenerateModel {
            reason: "primary bandwidth undefined: total inertia is zero".into(),
        });
    }
    if gains <= 0.0 {
        return Err(Error::DegenerateModel {
            reason: "primary and secondary bandwidths undefined: \
                     kp_sg + kp_vsm + d_sg + d_vsm is zero"
                .into(),
        });
    }
    if ess.e_nom <= 0.0 {
        return Err(Error::DegenerateModel {
            reason: "SoC bandwidth undefined: e_nom is zero".into(),
        });
    }
    Ok(BandwidthEstimates {
        primary: gains / h_total,
        secondary: sg.ki_sg / gains,
        soc: ess.kp_e / ess.e_nom,
    })
}

/// Analytic and measured bandwidths of the three loops plus the
/// separation verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandwidthReport {
    pub primary_analytic: f64,
    pub secondary_analytic: f64,
    pub soc_analytic: f64,
    pub primary_measured: f64,
    pub secondary_measured: f64,
    pub soc_measured: f64,
    /// (primary/secondary, secondary/soc).
    pub separation_ratios: (f64, f64),
    pub separation_factor: f64,
    /// True when both ratios meet the separation factor.
    pub separation_ok: bool,
}

/// Fill analytic values from the closed forms and measured values from the
/// -3 dB points of the three simplified first-order loop models.
pub fn bandwidth_report(
    sg: &SgParams,
    vsm: &VsmParams,
    ess: &EssParams,
    separation_factor: f64,
) -> Result<BandwidthReport> {
    if separation_factor.is_nan() || separation_factor < 1.0 {
        return Err(Error::InvalidParameter {
            field: "separation_factor",
            reason: format!("must be >= 1, got {separation_factor}"),
        });
    }
    let analytic = estimate_bandwidths(sg, vsm, ess)?;
    let primary_measured = simplified_primary_model(sg, vsm)?.bandwidth(1.0)?;
    let secondary_measured = simplified_secondary_model(sg, vsm)?.bandwidth(1.0)?;
    let soc_measured = simplified_soc_model(ess)?.bandwidth(1.0)?;

    let ratios = (
        analytic.primary / analytic.secondary,
        analytic.secondary / analytic.soc,
    );
    Ok(BandwidthReport {
        primary_analytic: analytic.primary,
        secondary_analytic: analytic.secondary,
        soc_analytic: analytic.soc,
        primary_measured,
        secondary_measured,
        soc_measured,
        separation_ratios: ratios,
        separation_factor,
        separation_ok: ratios.0 >= separation_factor && ratios.1 >= separation_factor,
    })
}

/// Informational diagnostic: the -3 dB point of the closed secondary
/// characteristic `g_f(s)/s` of the full model, measured against its own
/// DC gain. Unlike the simplified models this carries the full fourth-order
/// dynamics, so no tolerance is attached to it.
pub fn secondary_bandwidth_full_model(model: &SystemModel) -> Result<f64> {
    let closed = model.g_f.integrated();
    let dc = closed.final_value_of_step_response(1.0)?;
    closed.bandwidth(dc)
}
