//! Python bindings for the gridfreq toolkit.
//!
//! Exposes the parameter records, transfer-function objects, the analysis
//! operations (energy accounting, loop bandwidths), and the time-domain
//! simulator. All heavy lifting happens in the core crate; these wrappers
//! only translate types and errors.
//!
//! Usage from Python:
//!
//!     import gridfreq_py as gf
//!     report = gf.energy_report(gf.SgParams(), gf.VsmParams(), gf.EssParams(), 0.375)
//!     result = gf.run_simulation(gf.Scenario(duration=60.0))
//!     print(report.delta_soc, result.metrics.nadir_hz)

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use gridfreq as core;

fn to_py_err(err: core::Error) -> PyErr {
    match &err {
        core::Error::InvalidParameter { .. } | core::Error::InvalidScenario { .. } => {
            PyValueError::new_err(err.to_string())
        }
        _ => PyRuntimeError::new_err(err.to_string()),
    }
}

/// Synchronous-generator constants. Defaults are the table1 profile.
#[pyclass(name = "SgParams", module = "gridfreq_py", from_py_object)]
#[derive(Clone)]
struct PySgParams {
    inner: core::SgParams,
}

#[pymethods]
impl PySgParams {
    #[new]
    #[pyo3(signature = (h_sg=2.5, d_sg=0.0, kp_sg=15.0, ki_sg=5.0, t_sg=0.3))]
    fn new(h_sg: f64, d_sg: f64, kp_sg: f64, ki_sg: f64, t_sg: f64) -> PyResult<Self> {
        let inner = core::SgParams {
            h_sg,
            d_sg,
            kp_sg,
            ki_sg,
            t_sg,
        };
        inner.validate().map_err(to_py_err)?;
        Ok(PySgParams { inner })
    }

    #[getter]
    fn h_sg(&self) -> f64 {
        self.inner.h_sg
    }
    #[getter]
    fn d_sg(&self) -> f64 {
        self.inner.d_sg
    }
    #[getter]
    fn kp_sg(&self) -> f64 {
        self.inner.kp_sg
    }
    #[getter]
    fn ki_sg(&self) -> f64 {
        self.inner.ki_sg
    }
    #[getter]
    fn t_sg(&self) -> f64 {
        self.inner.t_sg
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Virtual-synchronous-machine constants. Defaults are the table1 profile.
#[pyclass(name = "VsmParams", module = "gridfreq_py", from_py_object)]
#[derive(Clone)]
struct PyVsmParams {
    inner: core::VsmParams,
}

#[pymethods]
impl PyVsmParams {
    #[new]
    #[pyo3(signature = (h_vsm=5.0, d_vsm=10.0, kp_vsm=15.0, t_vsm=0.3))]
    fn new(h_vsm: f64, d_vsm: f64, kp_vsm: f64, t_vsm: f64) -> PyResult<Self> {
        let inner = core::VsmParams {
            h_vsm,
            d_vsm,
            kp_vsm,
            t_vsm,
        };
        inner.validate().map_err(to_py_err)?;
        Ok(PyVsmParams { inner })
    }

    #[getter]
    fn h_vsm(&self) -> f64 {
        self.inner.h_vsm
    }
    #[getter]
    fn d_vsm(&self) -> f64 {
        self.inner.d_vsm
    }
    #[getter]
    fn kp_vsm(&self) -> f64 {
        self.inner.kp_vsm
    }
    #[getter]
    fn t_vsm(&self) -> f64 {
        self.inner.t_vsm
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Energy-storage capacity and SoC-recovery constants. Defaults are the
/// table1 profile.
#[pyclass(name = "EssParams", module = "gridfreq_py", from_py_object)]
#[derive(Clone)]
struct PyEssParams {
    inner: core::EssParams,
}

#[pymethods]
impl PyEssParams {
    #[new]
    #[pyo3(signature = (e_nom=6.8, soc_ref=0.5, soc_ini=0.5, kp_e=0.4, ki_e=0.002, p_rating=1.0))]
    fn new(
        e_nom: f64,
        soc_ref: f64,
        soc_ini: f64,
        kp_e: f64,
        ki_e: f64,
        p_rating: f64,
    ) -> PyResult<Self> {
        let inner = core::EssParams {
            e_nom,
            soc_ref,
            soc_ini,
            kp_e,
            ki_e,
            p_rating,
        };
        inner.validate().map_err(to_py_err)?;
        Ok(PyEssParams { inner })
    }

    #[getter]
    fn e_nom(&self) -> f64 {
        self.inner.e_nom
    }
    #[getter]
    fn soc_ref(&self) -> f64 {
        self.inner.soc_ref
    }
    #[getter]
    fn soc_ini(&self) -> f64 {
        self.inner.soc_ini
    }
    #[getter]
    fn kp_e(&self) -> f64 {
        self.inner.kp_e
    }
    #[getter]
    fn ki_e(&self) -> f64 {
        self.inner.ki_e
    }
    #[getter]
    fn p_rating(&self) -> f64 {
        self.inner.p_rating
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Ratio of two real-coefficient polynomials in the Laplace variable.
#[pyclass(name = "TransferFunction", module = "gridfreq_py")]
struct PyTransferFunction {
    inner: core::RationalTransferFunction,
}

#[pymethods]
impl PyTransferFunction {
    /// Build from ascending-power numerator and denominator coefficients.
    #[new]
    fn new(num: Vec<f64>, den: Vec<f64>) -> PyResult<Self> {
        let inner = core::RationalTransferFunction::new(
            core::Polynomial::new(&num),
            core::Polynomial::new(&den),
        )
        .map_err(to_py_err)?;
        Ok(PyTransferFunction { inner })
    }

    /// Numerator coefficients, ascending powers of s.
    #[getter]
    fn num(&self) -> Vec<f64> {
        self.inner.numerator().coeffs().to_vec()
    }

    /// Denominator coefficients, ascending powers of s.
    #[getter]
    fn den(&self) -> Vec<f64> {
        self.inner.denominator().coeffs().to_vec()
    }

    /// Evaluate at a complex point s.
    fn evaluate(&self, s: Complex64) -> PyResult<Complex64> {
        self.inner.evaluate(s).map_err(to_py_err)
    }

    /// Gain in dB at angular frequency omega (rad/s).
    fn magnitude_db(&self, omega: f64) -> PyResult<f64> {
        self.inner.magnitude_db(omega).map_err(to_py_err)
    }

    /// Phase in degrees at angular frequency omega (rad/s).
    fn phase_deg(&self, omega: f64) -> PyResult<f64> {
        self.inner.phase_deg(omega).map_err(to_py_err)
    }

    /// -3 dB crossing of the magnitude relative to `dc_reference`.
    #[pyo3(signature = (dc_reference=1.0))]
    fn bandwidth(&self, dc_reference: f64) -> PyResult<f64> {
        self.inner.bandwidth(dc_reference).map_err(to_py_err)
    }

    /// Final value of the step response (final-value theorem).
    #[pyo3(signature = (step_amplitude=1.0))]
    fn final_value_of_step_response(&self, step_amplitude: f64) -> PyResult<f64> {
        self.inner
            .final_value_of_step_response(step_amplitude)
            .map_err(to_py_err)
    }

    /// True when every denominator root lies strictly in the left half plane.
    fn is_stable(&self) -> bool {
        self.inner.is_stable()
    }

    fn __repr__(&self) -> String {
        format!(
            "TransferFunction(num={:?}, den={:?})",
            self.inner.numerator().coeffs(),
            self.inner.denominator().coeffs()
        )
    }
}

/// The four load-response transfer functions of the coupled system.
#[pyclass(name = "SystemModel", module = "gridfreq_py")]
struct PySystemModel {
    inner: core::SystemModel,
}

#[pymethods]
impl PySystemModel {
    /// Load to frequency deviation.
    #[getter]
    fn g_f(&self) -> PyTransferFunction {
        PyTransferFunction {
            inner: self.inner.g_f.clone(),
        }
    }

    /// Load to SG power.
    #[getter]
    fn tf_p_sg(&self) -> PyTransferFunction {
        PyTransferFunction {
            inner: self.inner.tf_p_sg.clone(),
        }
    }

    /// Load to virtual inertia + damping power.
    #[getter]
    fn tf_p_hd(&self) -> PyTransferFunction {
        PyTransferFunction {
            inner: self.inner.tf_p_hd.clone(),
        }
    }

    /// Load to virtual governor power.
    #[getter]
    fn tf_p_gov(&self) -> PyTransferFunction {
        PyTransferFunction {
            inner: self.inner.tf_p_gov.clone(),
        }
    }

    #[getter]
    fn base_frequency_hz(&self) -> f64 {
        self.inner.base_frequency_hz
    }
}

/// Steady-state ESS energy spent per service after a load step.
#[pyclass(name = "EnergyReport", module = "gridfreq_py")]
struct PyEnergyReport {
    inner: core::EnergyReport,
}

#[pymethods]
impl PyEnergyReport {
    #[getter]
    fn delta_e_hd(&self) -> f64 {
        self.inner.delta_e_hd
    }
    #[getter]
    fn delta_e_gov(&self) -> f64 {
        self.inner.delta_e_gov
    }
    #[getter]
    fn delta_e_vsm(&self) -> f64 {
        self.inner.delta_e_vsm
    }
    #[getter]
    fn delta_soc(&self) -> f64 {
        self.inner.delta_soc
    }
    #[getter]
    fn delta_p_l(&self) -> f64 {
        self.inner.delta_p_l
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Analytic and measured loop bandwidths with the separation verdict.
#[pyclass(name = "BandwidthReport", module = "gridfreq_py")]
struct PyBandwidthReport {
    inner: core::BandwidthReport,
}

#[pymethods]
impl PyBandwidthReport {
    #[getter]
    fn primary_analytic(&self) -> f64 {
        self.inner.primary_analytic
    }
    #[getter]
    fn secondary_analytic(&self) -> f64 {
        self.inner.secondary_analytic
    }
    #[getter]
    fn soc_analytic(&self) -> f64 {
        self.inner.soc_analytic
    }
    #[getter]
    fn primary_measured(&self) -> f64 {
        self.inner.primary_measured
    }
    #[getter]
    fn secondary_measured(&self) -> f64 {
        self.inner.secondary_measured
    }
    #[getter]
    fn soc_measured(&self) -> f64 {
        self.inner.soc_measured
    }
    #[getter]
    fn separation_ratios(&self) -> (f64, f64) {
        self.inner.separation_ratios
    }
    #[getter]
    fn separation_factor(&self) -> f64 {
        self.inner.separation_factor
    }
    #[getter]
    fn separation_ok(&self) -> bool {
        self.inner.separation_ok
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// A step-load experiment description. Defaults reproduce the table1
/// profile (full system, recovery closed, 0.375 p.u. step at t = 10 s).
#[pyclass(name = "Scenario", module = "gridfreq_py")]
struct PyScenario {
    inner: core::Scenario,
}

#[pymethods]
impl PyScenario {
    #[new]
    #[pyo3(signature = (sg=None, vsm=None, ess=None, recovery_enabled=true, step_time=10.0,
                        delta_p_l=0.375, duration=400.0, dt=1e-3, base_frequency_hz=60.0,
                        saturation_enabled=false, no_vsm=false))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        sg: Option<PySgParams>,
        vsm: Option<PyVsmParams>,
        ess: Option<PyEssParams>,
        recovery_enabled: bool,
        step_time: f64,
        delta_p_l: f64,
        duration: f64,
        dt: f64,
        base_frequency_hz: f64,
        saturation_enabled: bool,
        no_vsm: bool,
    ) -> PyResult<Self> {
        let inner = core::Scenario {
            sg: sg.map_or_else(core::SgParams::table1, |p| p.inner),
            vsm: if no_vsm {
                None
            } else {
                Some(vsm.map_or_else(core::VsmParams::table1, |p| p.inner))
            },
            ess: ess.map_or_else(core::EssParams::table1, |p| p.inner),
            recovery_enabled,
            step_time,
            delta_p_l,
            duration,
            dt,
            base_frequency_hz,
            saturation_enabled,
        };
        inner.validate().map_err(to_py_err)?;
        Ok(PyScenario { inner })
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Scalar metrics of one simulation run.
#[pyclass(name = "Metrics", module = "gridfreq_py")]
struct PyMetrics {
    inner: core::Metrics,
}

#[pymethods]
impl PyMetrics {
    #[getter]
    fn nadir_hz(&self) -> f64 {
        self.inner.nadir_hz
    }
    #[getter]
    fn nadir_time_s(&self) -> f64 {
        self.inner.nadir_time_s
    }
    #[getter]
    fn freq_steady_hz(&self) -> f64 {
        self.inner.freq_steady_hz
    }
    #[getter]
    fn soc_min(&self) -> f64 {
        self.inner.soc_min
    }
    #[getter]
    fn soc_final(&self) -> f64 {
        self.inner.soc_final
    }
    /// None when the SoC never settles within the horizon.
    #[getter]
    fn soc_settling_time_s(&self) -> Option<f64> {
        self.inner.soc_settling_time_s
    }
    #[getter]
    fn max_power_balance_residual(&self) -> f64 {
        self.inner.max_power_balance_residual
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Recorded series plus metrics of one simulation run.
#[pyclass(name = "SimulationResult", module = "gridfreq_py")]
struct PySimulationResult {
    inner: core::SimulationResult,
}

#[pymethods]
impl PySimulationResult {
    #[getter]
    fn metrics(&self) -> PyMetrics {
        PyMetrics {
            inner: self.inner.metrics,
        }
    }
    #[getter]
    fn time_s(&self) -> Vec<f64> {
        self.inner.series.time_s.clone()
    }
    #[getter]
    fn frequency_hz(&self) -> Vec<f64> {
        self.inner.series.frequency_hz.clone()
    }
    #[getter]
    fn p_sg(&self) -> Vec<f64> {
        self.inner.series.p_sg.clone()
    }
    #[getter]
    fn p_hd(&self) -> Vec<f64> {
        self.inner.series.p_hd.clone()
    }
    #[getter]
    fn p_gov_vsm(&self) -> Vec<f64> {
        self.inner.series.p_gov_vsm.clone()
    }
    #[getter]
    fn p_rec(&self) -> Vec<f64> {
        self.inner.series.p_rec.clone()
    }
    #[getter]
    fn p_ess(&self) -> Vec<f64> {
        self.inner.series.p_ess.clone()
    }
    #[getter]
    fn soc(&self) -> Vec<f64> {
        self.inner.series.soc.clone()
    }
    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings.clone()
    }

    fn __len__(&self) -> usize {
        self.inner.series.len()
    }
}

/// Build the coupled SG+VSM transfer-function model.
#[pyfunction]
#[pyo3(signature = (sg, vsm, base_frequency_hz=60.0))]
fn build_system(
    sg: PySgParams,
    vsm: PyVsmParams,
    base_frequency_hz: f64,
) -> PyResult<PySystemModel> {
    core::build_system(sg.inner, vsm.inner, base_frequency_hz)
        .map(|inner| PySystemModel { inner })
        .map_err(to_py_err)
}

/// Closed-form steady-state energy report.
#[pyfunction]
fn energy_report(
    sg: PySgParams,
    vsm: PyVsmParams,
    ess: PyEssParams,
    delta_p_l: f64,
) -> PyResult<PyEnergyReport> {
    core::energy_report(&sg.inner, &vsm.inner, &ess.inner, delta_p_l)
        .map(|inner| PyEnergyReport { inner })
        .map_err(to_py_err)
}

/// Energy report via the final-value theorem on the model's transfer
/// functions; must agree with the closed form.
#[pyfunction]
fn energy_report_via_final_value(
    model: &PySystemModel,
    ess: PyEssParams,
    delta_p_l: f64,
) -> PyResult<PyEnergyReport> {
    core::energy_report_via_final_value(&model.inner, &ess.inner, delta_p_l)
        .map(|inner| PyEnergyReport { inner })
        .map_err(to_py_err)
}

/// Closed-form loop bandwidths `(primary, secondary, soc)` in rad/s.
#[pyfunction]
fn estimate_bandwidths(
    sg: PySgParams,
    vsm: PyVsmParams,
    ess: PyEssParams,
) -> PyResult<(f64, f64, f64)> {
    core::estimate_bandwidths(&sg.inner, &vsm.inner, &ess.inner)
        .map(|bw| (bw.primary, bw.secondary, bw.soc))
        .map_err(to_py_err)
}

/// Analytic and measured bandwidths plus the separation verdict.
#[pyfunction]
#[pyo3(signature = (sg, vsm, ess, separation_factor=2.0))]
fn bandwidth_report(
    sg: PySgParams,
    vsm: PyVsmParams,
    ess: PyEssParams,
    separation_factor: f64,
) -> PyResult<PyBandwidthReport> {
    core::bandwidth_report(&sg.inner, &vsm.inner, &ess.inner, separation_factor)
        .map(|inner| PyBandwidthReport { inner })
        .map_err(to_py_err)
}

/// Simplified first-order primary-loop model.
#[pyfunction]
fn simplified_primary_model(sg: PySgParams, vsm: PyVsmParams) -> PyResult<PyTransferFunction> {
    core::simplified_primary_model(&sg.inner, &vsm.inner)
        .map(|inner| PyTransferFunction { inner })
        .map_err(to_py_err)
}

/// Simplified first-order secondary-loop model.
#[pyfunction]
fn simplified_secondary_model(sg: PySgParams, vsm: PyVsmParams) -> PyResult<PyTransferFunction> {
    core::simplified_secondary_model(&sg.inner, &vsm.inner)
        .map(|inner| PyTransferFunction { inner })
        .map_err(to_py_err)
}

/// Simplified first-order SoC recovery-loop model.
#[pyfunction]
fn simplified_soc_model(ess: PyEssParams) -> PyResult<PyTransferFunction> {
    core::simplified_soc_model(&ess.inner)
        .map(|inner| PyTransferFunction { inner })
        .map_err(to_py_err)
}

/// Integrate a scenario; `decimation` defaults to 10 ms output spacing.
#[pyfunction]
#[pyo3(signature = (scenario, decimation=None))]
fn run_simulation(scenario: &PyScenario, decimation: Option<usize>) -> PyResult<PySimulationResult> {
    let result = match decimation {
        Some(every) => core::run_decimated(&scenario.inner, every),
        None => core::run(&scenario.inner),
    };
    result
        .map(|inner| PySimulationResult { inner })
        .map_err(to_py_err)
}

#[pymodule]
fn gridfreq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PySgParams>()?;
    m.add_class::<PyVsmParams>()?;
    m.add_class::<PyEssParams>()?;
    m.add_class::<PyTransferFunction>()?;
    m.add_class::<PySystemModel>()?;
    m.add_class::<PyEnergyReport>()?;
    m.add_class::<PyBandwidthReport>()?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyMetrics>()?;
    m.add_class::<PySimulationResult>()?;
    m.add_function(wrap_pyfunction!(build_system, m)?)?;
    m.add_function(wrap_pyfunction!(energy_report, m)?)?;
    m.add_function(wrap_pyfunction!(energy_report_via_final_value, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_bandwidths, m)?)?;
    m.add_function(wrap_pyfunction!(bandwidth_report, m)?)?;
    m.add_function(wrap_pyfunction!(simplified_primary_model, m)?)?;
    m.add_function(wrap_pyfunction!(simplified_secondary_model, m)?)?;
    m.add_function(wrap_pyfunction!(simplified_soc_model, m)?)?;
    m.add_function(wrap_pyfunction!(run_simulation, m)?)?;
    Ok(())
}
