//! Flat key-value scenario configuration: a one-level JSON object whose
//! keys carry explicit units, every key optional and defaulted from the
//! built-in `table1` profile, unknown keys rejected.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use gridfreq::{EssParams, Scenario, SgParams, VsmParams};

use crate::CliError;

macro_rules! default_fns {
    ($($fn_name:ident -> $ty:ty = $value:expr;)*) => {
        $(fn $fn_name() -> $ty { $value })*
    };
}

default_fns! {
    d_h_sg_s -> f64 = 2.5;
    d_d_sg_pu -> f64 = 0.0;
    d_kp_sg_pu -> f64 = 15.0;
    d_ki_sg_pu_per_s -> f64 = 5.0;
    d_t_sg_s -> f64 = 0.3;
    d_vsm_enabled -> bool = true;
    d_h_vsm_s -> f64 = 5.0;
    d_d_vsm_pu -> f64 = 10.0;
    d_kp_vsm_pu -> f64 = 15.0;
    d_t_vsm_s -> f64 = 0.3;
    d_e_nom_pu_s -> f64 = 6.8;
    d_soc_ref -> f64 = 0.5;
    d_soc_ini -> f64 = 0.5;
    d_kp_e_pu -> f64 = 0.4;
    d_ki_e_pu_per_s -> f64 = 0.002;
    d_p_rating_pu -> f64 = 1.0;
    d_recovery_enabled -> bool = true;
    d_saturation_enabled -> bool = false;
    d_step_time_s -> f64 = 10.0;
    d_delta_p_l_pu -> f64 = 0.375;
    d_duration_s -> f64 = 400.0;
    d_dt_s -> f64 = 1e-3;
    d_base_frequency_hz -> f64 = 60.0;
}

/// Textual mirror of a [`Scenario`] with unit-suffixed keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "d_h_sg_s")]
    pub h_sg_s: f64,
    #[serde(default = "d_d_sg_pu")]
    pub d_sg_pu: f64,
    #[serde(default = "d_kp_sg_pu")]
    pub kp_sg_pu: f64,
    #[serde(default = "d_ki_sg_pu_per_s")]
    pub ki_sg_pu_per_s: f64,
    #[serde(default = "d_t_sg_s")]
    pub t_sg_s: f64,

    #[serde(default = "d_vsm_enabled")]
    pub vsm_enabled: bool,
    #[serde(default = "d_h_vsm_s")]
    pub h_vsm_s: f64,
    #[serde(default = "d_d_vsm_pu")]
    pub d_vsm_pu: f64,
    #[serde(default = "d_kp_vsm_pu")]
    pub kp_vsm_pu: f64,
    #[serde(default = "d_t_vsm_s")]
    pub t_vsm_s: f64,

    #[serde(default = "d_e_nom_pu_s")]
    pub e_nom_pu_s: f64,
    #[serde(default = "d_soc_ref")]
    pub soc_ref: f64,
    #[serde(default = "d_soc_ini")]
    pub soc_ini: f64,
    #[serde(default = "d_kp_e_pu")]
    pub kp_e_pu: f64,
    #[serde(default = "d_ki_e_pu_per_s")]
    pub ki_e_pu_per_s: f64,
    #[serde(default = "d_p_rating_pu")]
    pub p_rating_pu: f64,

    #[serde(default = "d_recovery_enabled")]
    pub recovery_enabled: bool,
    #[serde(default = "d_saturation_enabled")]
    pub saturation_enabled: bool,
    #[serde(default = "d_step_time_s")]
    pub step_time_s: f64,
    #[serde(default = "d_delta_p_l_pu")]
    pub delta_p_l_pu: f64,
    #[serde(default = "d_duration_s")]
    pub duration_s: f64,
    #[serde(default = "d_dt_s")]
    pub dt_s: f64,
    #[serde(default = "d_base_frequency_hz")]
    pub base_frequency_hz: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::table1()
    }
}

impl ScenarioConfig {
    /// The built-in reference profile.
    pub fn table1() -> Self {
        serde_json::from_str("{}").expect("empty object fills every default")
    }

    /// Read a config file; `None` yields the built-in `table1` profile.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::table1());
        };
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|e| {
            CliError::Config(format!("{} at line {}, column {}", e, e.line(), e.column()))
        })
    }

    pub fn sg(&self) -> SgParams {
        SgParams {
            h_sg: self.h_sg_s,
            d_sg: self.d_sg_pu,
            kp_sg: self.kp_sg_pu,
            ki_sg: self.ki_sg_pu_per_s,
            t_sg: self.t_sg_s,
        }
    }

    pub fn vsm(&self) -> Option<VsmParams> {
        self.vsm_enabled.then_some(VsmParams {
            h_vsm: self.h_vsm_s,
            d_vsm: self.d_vsm_pu,
            kp_vsm: self.kp_vsm_pu,
            t_vsm: self.t_vsm_s,
        })
    }

    /// VSM parameters regardless of the enable switch (analysis commands
    /// treat a disabled VSM as all-zero gains).
    pub fn vsm_or_disabled(&self) -> VsmParams {
        self.vsm().unwrap_or(VsmParams {
            h_vsm: 0.0,
            d_vsm: 0.0,
            kp_vsm: 0.0,
            t_vsm: self.t_vsm_s,
        })
    }

    pub fn ess(&self) -> EssParams {
        EssParams {
            e_nom: self.e_nom_pu_s,
            soc_ref: self.soc_ref,
            soc_ini: self.soc_ini,
            kp_e: self.kp_e_pu,
            ki_e: self.ki_e_pu_per_s,
            p_rating: self.p_rating_pu,
        }
    }

    pub fn scenario(&self) -> Scenario {
        Scenario {
            sg: self.sg(),
            vsm: self.vsm(),
            ess: self.ess(),
            recovery_enabled: self.recovery_enabled,
            step_time: self.step_time_s,
            delta_p_l: self.delta_p_l_pu,
            duration: self.duration_s,
            dt: self.dt_s,
            base_frequency_hz: self.base_frequency_hz,
            saturation_enabled: self.saturation_enabled,
        }
    }

    /// Names of the numeric keys accepted by `sweep --param`.
    pub fn numeric_keys() -> &'static [&'static str] {
        &[
            "h_sg_s",
            "d_sg_pu",
            "kp_sg_pu",
            "ki_sg_pu_per_s",
            "t_sg_s",
            "h_vsm_s",
            "d_vsm_pu",
            "kp_vsm_pu",
            "t_vsm_s",
            "e_nom_pu_s",
            "soc_ref",
            "soc_ini",
            "kp_e_pu",
            "ki_e_pu_per_s",
            "p_rating_pu",
            "step_time_s",
            "delta_p_l_pu",
            "duration_s",
            "dt_s",
            "base_frequency_hz",
        ]
    }

    /// Overwrite one numeric field by key name.
    pub fn set_numeric(&mut self, key: &str, value: f64) -> Result<(), CliError> {
        let slot = match key {
            "h_sg_s" => &mut self.h_sg_s,
            "d_sg_pu" => &mut self.d_sg_pu,
            "kp_sg_pu" => &mut self.kp_sg_pu,
            "ki_sg_pu_per_s" => &mut self.ki_sg_pu_per_s,
            "t_sg_s" => &mut self.t_sg_s,
            "h_vsm_s" => &mut self.h_vsm_s,
            "d_vsm_pu" => &mut self.d_vsm_pu,
            "kp_vsm_pu" => &mut self.kp_vsm_pu,
            "t_vsm_s" => &mut self.t_vsm_s,
            "e_nom_pu_s" => &mut self.e_nom_pu_s,
            "soc_ref" => &mut self.soc_ref,
            "soc_ini" => &mut self.soc_ini,
            "kp_e_pu" => &mut self.kp_e_pu,
            "ki_e_pu_per_s" => &mut self.ki_e_pu_per_s,
            "p_rating_pu" => &mut self.p_rating_pu,
            "step_time_s" => &mut self.step_time_s,
            "delta_p_l_pu" => &mut self.delta_p_l_pu,
            "duration_s" => &mut self.duration_s,
            "dt_s" => &mut self.dt_s,
            "base_frequency_hz" => &mut self.base_frequency_hz,
            other => {
                return Err(CliError::Config(format!(
                    "unknown sweep parameter `{other}`; numeric keys: {}",
                    Self::numeric_keys().join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}
