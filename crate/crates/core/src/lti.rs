//! Polynomial and rational-transfer-function arithmetic in the Laplace
//! variable `s`: frequency response, -3 dB bandwidth measurement, and
//! final-value evaluation of step responses.
//!
//! Coefficients are stored in ascending powers of `s`, so `coeffs[0]` is the
//! constant term. Keeping the constant term at index 0 makes both `s = 0`
//! evaluation and cancellation of `s` factors index-0 operations.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance used when trimming leading coefficients and when
/// testing a denominator magnitude against zero.
const COEFF_TOL: f64 = 1e-12;

/// Roots must satisfy Re < -STABILITY_MARGIN for the final-value theorem.
const STABILITY_MARGIN: f64 = 1e-9;

/// Real-coefficient polynomial in `s`, ascending powers, canonical trimmed
/// form: the highest-order coefficient is nonzero unless the polynomial is
/// the zero polynomial (represented as a single zero coefficient).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Build a polynomial from ascending-power coefficients, trimming
    /// leading coefficients that are negligible relative to the largest one.
    pub fn new(coeffs: &[f64]) -> Self {
        let mut c = coeffs.to_vec();
        let max_abs = c.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let tol = COEFF_TOL * max_abs;
        while c.len() > 1 && c.last().is_some_and(|x| x.abs() <= tol) {
            c.pop();
        }
        if c.is_empty() || (c.len() == 1 && c[0].abs() <= tol) {
            c = vec![0.0];
        }
        Polynomial { coeffs: c }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![0.0] }
    }

    pub fn constant(value: f64) -> Self {
        Polynomial::new(&[value])
    }

    /// The monomial `s`.
    pub fn s() -> Self {
        Polynomial::new(&[0.0, 1.0])
    }

    /// First-order factor `tau*s + 1`.
    pub fn lag(tau: f64) -> Self {
        Polynomial::new(&[1.0, tau])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Coefficient-wise sum, trimmed.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Polynomial::new(&out)
    }

    /// Convolution of coefficient sequences, trimmed.
    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(&out)
    }

    pub fn scale(&self, factor: f64) -> Polynomial {
        let out: Vec<f64> = self.coeffs.iter().map(|c| c * factor).collect();
        Polynomial::new(&out)
    }

    /// Multiply by `s` (shift coefficients up one power).
    pub fn multiply_by_s(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(0.0);
        out.extend_from_slice(&self.coeffs);
        Polynomial::new(&out)
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    /// Number of exactly-zero low-order coefficients, i.e. the multiplicity
    /// of the root at the origin. Construction from products of polynomials
    /// with a zero constant term yields exact 0.0 coefficients, so an exact
    /// test is appropriate here.
    fn origin_root_multiplicity(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.coeffs.iter().take_while(|c| **c == 0.0).count()
    }

    /// Drop `k` factors of `s` (requires that many exact zero low-order
    /// coefficients).
    fn cancel_origin_factors(&self, k: usize) -> Polynomial {
        debug_assert!(self.origin_root_multiplicity() >= k);
        Polynomial::new(&self.coeffs[k..])
    }

    /// Roots via eigenvalues of the companion matrix of the monic form.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[n];
        let mut companion = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            companion[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        companion.complex_eigenvalues().iter().copied().collect()
    }
}

/// Ratio of two real-coefficient polynomials in `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalTransferFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalTransferFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParameter {
                field: "denominator",
                reason: "denominator must not be the zero polynomial".into(),
            });
        }
        Ok(RationalTransferFunction { num, den })
    }

    /// First-order low-pass `1 / (s/pole + 1)` with unit DC gain.
    pub fn first_order_unit_dc(pole: f64) -> Result<Self> {
        if pole <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "pole",
                reason: format!("first-order pole must be positive, got {pole}"),
            });
        }
        RationalTransferFunction::new(Polynomial::constant(1.0), Polynomial::lag(1.0 / pole))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    /// `self / s`, used to pass from a power signal to its energy integral.
    pub fn integrated(&self) -> Self {
        RationalTransferFunction {
            num: self.num.clone(),
            den: self.den.multiply_by_s(),
        }
    }

    /// Evaluate `num(s) / den(s)` by Horner evaluation of both polynomials.
    ///
    /// Fails with a pole-hit error when `|den(s)|` falls below the
    /// scale-aware tolerance `1e-12 * max(1, largest |den coefficient|)`.
    pub fn evaluate(&self, s: Complex64) -> Result<Complex64> {
        let den_val = self.den.eval(s);
        let tol = COEFF_TOL * self.den.max_abs_coeff().max(1.0);
        if den_val.norm() < tol {
            return Err(Error::PoleHit {
                denominator_magnitude: den_val.norm(),
            });
        }
        Ok(self.num.eval(s) / den_val)
    }

    /// Gain in dB at angular frequency `omega`, i.e. `20*log10 |H(j omega)|`.
    pub fn magnitude_db(&self, omega: f64) -> Result<f64> {
        let value = self.evaluate(Complex64::new(0.0, omega))?;
        Ok(20.0 * value.norm().log10())
    }

    /// Phase in degrees at angular frequency `omega`.
    pub fn phase_deg(&self, omega: f64) -> Result<f64> {
        let value = self.evaluate(Complex64::new(0.0, omega))?;
        Ok(value.arg().to_degrees())
    }

    /// True when every denominator root satisfies Re < -1e-9. The
    /// final-value theorem below requires this of the roots that remain
    /// after cancelling origin factors.
    pub fn is_stable(&self) -> bool {
        self.den
            .roots()
            .iter()
            .all(|r| r.re < -STABILITY_MARGIN)
    }

    /// -3 dB bandwidth with the default search configuration.
    pub fn bandwidth(&self, dc_reference: f64) -> Result<f64> {
        self.bandwidth_with(dc_reference, &BandwidthSearch::default())
    }

    /// Smallest `omega` where `|H(j omega)|` crosses `dc_reference/sqrt(2)`
    /// from above: log-spaced scan for a bracket, then bisection to the
    /// configured relative tolerance.
    pub fn bandwidth_with(&self, dc_reference: f64, search: &BandwidthSearch) -> Result<f64> {
        if dc_reference <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "dc_reference",
                reason: format!("dc reference must be positive, got {dc_reference}"),
            });
        }
        let threshold = dc_reference / std::f64::consts::SQRT_2;
        let no_crossing = || Error::NoCrossing {
            omega_min: search.omega_min,
            omega_max: search.omega_max,
        };

        let grid_mag = |i: usize| -> Result<(f64, f64)> {
            let frac = i as f64 / (search.probe_points - 1) as f64;
            let omega = search.omega_min * (search.omega_max / search.omega_min).powf(frac);
            let mag = self.evaluate(Complex64::new(0.0, omega))?.norm();
            Ok((omega, mag))
        };

        let (_, first_mag) = grid_mag(0)?;
        if first_mag < threshold {
            // Already below threshold at the low end: no crossing from above.
            return Err(no_crossing());
        }
        let mut prev = grid_mag(0)?;
        let mut bracket = None;
        for i in 1..search.probe_points {
            let cur = grid_mag(i)?;
            if prev.1 >= threshold && cur.1 < threshold {
                bracket = Some((prev.0, cur.0));
                break;
            }
            prev = cur;
        }
        let (mut lo, mut hi) = bracket.ok_or_else(no_crossing)?;

        while (hi - lo) > search.rel_tol * hi {
            let mid = (lo * hi).sqrt();
            let mag = self.evaluate(Complex64::new(0.0, mid))?.norm();
            if mag >= threshold {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Steady-state value of the response to a step of the given amplitude,
    /// by the final-value theorem: common factors of `s` are cancelled
    /// exactly, the remaining denominator must have no root at the origin
    /// and all roots strictly in the left half plane, and the result is
    /// `H(0) * step_amplitude`.
    pub fn final_value_of_step_response(&self, step_amplitude: f64) -> Result<f64> {
        if self.num.is_zero() {
            return Ok(0.0);
        }
        let common = self
            .num
            .origin_root_multiplicity()
            .min(self.den.origin_root_multiplicity());
        let num = self.num.cancel_origin_factors(common);
        let den = self.den.cancel_origin_factors(common);

        if den.coeffs()[0] == 0.0 {
            return Err(Error::Divergence {
                reason: "pole at the origin remains after cancelling common s factors".into(),
            });
        }
        if let Some(bad) = den.roots().iter().find(|r| r.re >= -STABILITY_MARGIN) {
            return Err(Error::Unstable { real_part: bad.re });
        }
        Ok(num.coeffs()[0] / den.coeffs()[0] * step_amplitude)
    }
}

/// Search configuration for the -3 dB crossing scan.
#[derive(Debug, Clone)]
pub struct BandwidthSearch {
    pub omega_min: f64,
    pub omega_max: f64,
    pub probe_points: usize,
    pub rel_tol: f64,
}

impl Default for BandwidthSearch {
    fn default() -> Self {
        BandwidthSearch {
            omega_min: 1e-4,
            omega_max: 1e4,
            probe_points: 400,
            rel_tol: 1e-6,
        }
    }
}
