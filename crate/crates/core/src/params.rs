//! Physical and control constants of the test system. Each symbol lives in
//! exactly one record; the reference values (the "table1" profile) describe
//! a 320 kVA, 60 Hz system with one synchronous generator and one
//! ESS-based virtual synchronous machine.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Synchronous-generator constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SgParams {
    /// Inertia constant, s.
    pub h_sg: f64,
    /// Damping, p.u.
    pub d_sg: f64,
    /// Governor proportional gain, p.u.
    pub kp_sg: f64,
    /// Secondary (integral) frequency-control gain, p.u./s.
    pub ki_sg: f64,
    /// Governor lag time constant, s.
    pub t_sg: f64,
}

impl SgParams {
    pub fn table1() -> Self {
        SgParams {
            h_sg: 2.5,
            d_sg: 0.0,
            kp_sg: 15.0,
            ki_sg: 5.0,
            t_sg: 0.3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("h_sg", self.h_sg)?;
        require_positive("t_sg", self.t_sg)?;
        require_non_negative("d_sg", self.d_sg)?;
        require_non_negative("kp_sg", self.kp_sg)?;
        require_non_negative("ki_sg", self.ki_sg)?;
        Ok(())
    }
}

/// Virtual-synchronous-machine control constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VsmParams {
    /// Virtual inertia, s.
    pub h_vsm: f64,
    /// Virtual damping, p.u.
    pub d_vsm: f64,
    /// Virtual governor gain, p.u.
    pub kp_vsm: f64,
    /// VSM actuation lag time constant, s.
    pub t_vsm: f64,
}

impl VsmParams {
    pub fn table1() -> Self {
        VsmParams {
            h_vsm: 5.0,
            d_vsm: 10.0,
            kp_vsm: 15.0,
            t_vsm: 0.3,
        }
    }

    /// All gains and inertia zero: structurally removes the VSM from the
    /// frequency dynamics while keeping the lag well defined.
    pub fn disabled() -> Self {
        VsmParams {
            h_vsm: 0.0,
            d_vsm: 0.0,
            kp_vsm: 0.0,
            t_vsm: 0.3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_non_negative("h_vsm", self.h_vsm)?;
        require_positive("t_vsm", self.t_vsm)?;
        require_non_negative("d_vsm", self.d_vsm)?;
        require_non_negative("kp_vsm", self.kp_vsm)?;
        Ok(())
    }
}

/// Energy-storage capacity and SoC-recovery control constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EssParams {
    /// Energy capacity, p.u.*s.
    pub e_nom: f64,
    /// Target state of charge, fraction of capacity.
    pub soc_ref: f64,
    /// Initial state of charge, fraction of capacity.
    pub soc_ini: f64,
    /// Recovery proportional gain, p.u.
    pub kp_e: f64,
    /// Recovery integral gain, p.u./s.
    pub ki_e: f64,
    /// Converter power rating, p.u. (used only when saturation is enabled).
    pub p_rating: f64,
}

impl EssParams {
    pub fn table1() -> Self {
        EssParams {
            e_nom: 6.8,
            soc_ref: 0.5,
            soc_ini: 0.5,
            kp_e: 0.4,
            ki_e: 0.002,
            p_rating: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("e_nom", self.e_nom)?;
        require_fraction("soc_ref", self.soc_ref)?;
        require_fraction("soc_ini", self.soc_ini)?;
        require_non_negative("kp_e", self.kp_e)?;
        require_non_negative("ki_e", self.ki_e)?;
        require_positive("p_rating", self.p_rating)?;
        Ok(())
    }
}

fn require_positive(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        return Ok(());
    }
    Err(Error::InvalidParameter {
        field,
        reason: format!("must be positive and finite, got {value}"),
    })
}

fn require_non_negative(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        return Ok(());
    }
    Err(Error::InvalidParameter {
        field,
        reason: format!("must be non-negative and finite, got {value}"),
    })
}

fn require_fraction(field: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidParameter {
            field,
            reason: format!("must lie in [0, 1], got {value}"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_values_are_valid() {
        SgParams::table1().validate().unwrap();
        VsmParams::table1().validate().unwrap();
        EssParams::table1().validate().unwrap();
    }

    #[test]
    fn invalid_field_is_named() {
        let mut sg = SgParams::table1();
        sg.h_sg = 0.0;
        match sg.validate() {
            Err(Error::InvalidParameter { field, .. }) => assert_eq!(field, "h_sg"),
            other => panic!("expected InvalidParameter, got {other:?}"),
        }
        let mut ess = EssParams::table1();
        ess.soc_ini = 1.5;
        match ess.validate() {
            Err(Error::InvalidParameter { field, .. }) => assert_eq!(field, "soc_ini"),
            other => panic!("expected InvalidParameter, got {other:?}"),
        }
    }
}
