//! Construction of the load-to-frequency and load-to-power transfer
//! functions of the SG+VSM system, and of the three simplified first-order
//! loop models used for bandwidth estimation.
//!
//! Sign conventions:
//! - A positive load step `dP_L` means a load increase; the frequency
//!   deviation it causes is `df(s) = -g_f(s) * dP_L(s)`, so the frequency
//!   dips. `g_f` itself is stored with positive sign.
//! - Component powers are positive toward the grid (discharging, for the
//!   ESS), so the load-to-power transfer functions sum to exactly one.
//!
//! All four transfer functions share one denominator polynomial and their
//! numerators are expanded symbolically, which makes the power-balance
//! identity `tf_p_sg + tf_p_hd + tf_p_gov = 1` structural rather than
//! numerical.

use crate::error::{Error, Result};
use crate::lti::{Polynomial, RationalTransferFunction};
use crate::params::{EssParams, SgParams, VsmParams};

/// Transfer functions of the coupled SG+VSM frequency dynamics for one
/// load disturbance input.
#[derive(Debug, Clone)]
pub struct SystemModel {
    /// Load to frequency deviation (magnitude; the physical deviation for a
    /// load increase is `-g_f * dP_L`).
    pub g_f: RationalTransferFunction,
    /// Load to SG power (governor + secondary + inertia + damping).
    pub tf_p_sg: RationalTransferFunction,
    /// Load to virtual inertia + damping power of the ESS.
    pub tf_p_hd: RationalTransferFunction,
    /// Load to virtual governor power of the ESS.
    pub tf_p_gov: RationalTransferFunction,
    pub sg: SgParams,
    pub vsm: VsmParams,
    /// Nominal system frequency, Hz.
    pub base_frequency_hz: f64,
}

/// Build the coupled system model from generator and VSM parameters.
///
/// The denominator is
/// `(H_T s + D_T)(T_sg s + 1)(T_vsm s + 1) s + kp_vsm s (T_sg s + 1)
///  + (kp_sg s + ki_sg)(T_vsm s + 1)`
/// with `H_T = h_sg + h_vsm`, `D_T = d_sg + d_vsm`; the numerators of the
/// four outputs are the corresponding forward-path factors times the
/// frequency numerator `(T_sg s + 1)(T_vsm s + 1) s`.
pub fn build_system(sg: SgParams, vsm: VsmParams, base_frequency_hz: f64) -> Result<SystemModel> {
    sg.validate()?;
    vsm.validate()?;
    if base_frequency_hz.is_nan() || base_frequency_hz <= 0.0 {
        return Err(Error::InvalidParameter {
            field: "base_frequency_hz",
            reason: format!("must be positive, got {base_frequency_hz}"),
        });
    }
    if sg.h_sg + vsm.h_vsm <= 0.0 {
        return Err(Error::InvalidParameter {
            field: "h_sg + h_vsm",
            reason: "total inertia must be positive".into(),
        });
    }

    let s = Polynomial::s();
    let lag_sg = Polynomial::lag(sg.t_sg);
    let lag_vsm = Polynomial::lag(vsm.t_vsm);
    let swing = Polynomial::new(&[sg.d_sg + vsm.d_vsm, sg.h_sg + vsm.h_vsm]);
    let governor_sg = Polynomial::new(&[sg.ki_sg, sg.kp_sg]); // ki_sg + kp_sg s
    let inertia_sg = Polynomial::new(&[sg.d_sg, sg.h_sg]);
    let inertia_vsm = Polynomial::new(&[vsm.d_vsm, vsm.h_vsm]);

    let lags_s = lag_sg.multiply(&lag_vsm).multiply(&s);

    let num_gf = lags_s.clone();
    let den = swing
        .multiply(&lags_s)
        .add(&Polynomial::constant(vsm.kp_vsm).multiply(&s).multiply(&lag_sg))
        .add(&governor_sg.multiply(&lag_vsm));

    let num_sg = governor_sg
        .multiply(&lag_vsm)
        .add(&inertia_sg.multiply(&lags_s));
    let num_hd = inertia_vsm.multiply(&lags_s);
    let num_gov = Polynomial::constant(vsm.kp_vsm).multiply(&s).multiply(&lag_sg);

    Ok(SystemModel {
        g_f: RationalTransferFunction::new(num_gf, den.clone())?,
        tf_p_sg: RationalTransferFunction::new(num_sg, den.clone())?,
        tf_p_hd: RationalTransferFunction::new(num_hd, den.clone())?,
        tf_p_gov: RationalTransferFunction::new(num_gov, den)?,
        sg,
        vsm,
        base_frequency_hz,
    })
}

fn primary_gain_sum(sg: &SgParams, vsm: &VsmParams) -> f64 {
    sg.kp_sg + vsm.kp_vsm + sg.d_sg + vsm.d_vsm
}

/// First-order closed model of the primary frequency loop (governors taken
/// at their DC gain): unit DC gain, pole at
/// `(kp_sg + kp_vsm + d_sg + d_vsm) / (h_sg + h_vsm)`.
pub fn simplified_primary_model(
    sg: &SgParams,
    vsm: &VsmParams,
) -> Result<RationalTransferFunction> {
    let gains = primary_gain_sum(sg, vsm);
    let h_total = sg.h_sg + vsm.h_vsm;
    if h_total <= 0.0 {
        return Err(Error::DegenerateModel {
            reason: "primary loop requires positive total inertia".into(),
        });
    }
    if gains <= 0.0 {
        return Err(Error::DegenerateModel {
            reason: "primary loop requires kp_sg + kp_vsm + d_sg + d_vsm > 0".into(),
        });
    }
    RationalTransferFunction::first_order_unit_dc(gains / h_total)
}

/// First-order closed model of the secondary frequency loop: unit DC gain,
/// pole at `ki_sg / (kp_sg + kp_vsm + d_sg + d_vsm)`.
pub fn simplified_secondary_model(
    sg: &SgParams,
    vsm: &VsmParams,
) -> Result<RationalTransferFunction> {
    if sg.ki_sg <= 0.0 {
        return Err(Error::DegenerateModel {
            reason: "secondary loop requires ki_sg > 0".into(),
        });
    }
    let gains = primary_gain_sum(sg, vsm);
    if gains <= 0.0 {
        return Err(Error::DegenerateModel {
            reason: "secondary loop requires kp_sg + kp_vsm + d_sg + d_vsm > 0".into(),
        });
    }
    RationalTransferFunction::first_order_unit_dc(sg.ki_sg / gains)
}

/// First-order closed model of the SoC recovery loop (proportional action
/// on the `1/(E_nom s)` plant): unit DC gain, pole at `kp_e / e_nom`.
pub fn simplified_soc_model(ess: &EssParams) -> Result<RationalTransferFunction> {
    if ess.kp_e <= 0.0 {
        return Err(Error::DegenerateModel {
            reason: "SoC recovery loop requires kp_e > 0".into(),
        });
    }
    if ess.e_nom <= 0.0 {
        return Err(Error::DegenerateModel {
            reason: "SoC recovery loop requires e_nom > 0".into(),
        });
    }
    RationalTransferFunction::first_order_unit_dc(ess.kp_e / ess.e_nom)
}
