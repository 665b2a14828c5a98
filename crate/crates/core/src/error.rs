use thiserror::Error;

/// Errors produced by model construction, analysis, and simulation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A physical or control parameter violates its invariant.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// Transfer-function evaluation at (or numerically at) a pole.
    #[error("evaluation at a pole: |denominator(s)| = {denominator_magnitude:.3e} below tolerance")]
    PoleHit { denominator_magnitude: f64 },

    /// The magnitude response never crosses the -3 dB threshold on the
    /// search interval.
    #[error("no -3 dB crossing found on [{omega_min:.3e}, {omega_max:.3e}] rad/s")]
    NoCrossing { omega_min: f64, omega_max: f64 },

    /// A steady-state value does not exist (pole at the origin).
    #[error("steady-state value diverges: {reason}")]
    Divergence { reason: String },

    /// A denominator root with non-negative real part makes the
    /// final-value theorem inapplicable.
    #[error("unstable system: denominator root with real part {real_part:.3e}")]
    Unstable { real_part: f64 },

    /// A simplified loop model cannot be formed from these parameters.
    #[error("degenerate model: {reason}")]
    DegenerateModel { reason: String },

    /// Integration produced a non-finite state.
    #[error("non-finite state at t = {t} s (integration blow-up)")]
    NonFiniteState { t: f64 },

    /// A scenario field violates its invariant.
    #[error("invalid scenario: {reason}")]
    InvalidScenario { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
