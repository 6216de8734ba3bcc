use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter set violates one of its invariants.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The perturbative closed forms diverge when the effective Rabi
    /// frequency meets the trap frequency. The four-state model in
    /// [`crate::analytic::four_state_model`] stays regular there.
    #[error(
        "Rabi resonance: |Omega - omega_t|/omega_t = {relative_gap:.3e} is inside the guard band; \
         use the four-state model instead"
    )]
    RabiResonance { relative_gap: f64 },

    /// Non-removable pole of the shift function `f(xi)`; `sign` is the sign
    /// of the divergence approached from the evaluation point.
    #[error("pole of the shift function at xi = {xi} (diverges to {sign}inf)", sign = if *.sign < 0.0 { "-" } else { "+" })]
    Pole { xi: f64, sign: f64 },

    #[error("no interior maximum in bracket [{lo}, {hi}]")]
    Bracketing { lo: f64, hi: f64 },

    /// More than one local maximum on the coarse grid; `maxima` lists the
    /// grid abscissae of every local maximum found.
    #[error("ambiguous peak: {} local maxima on the coarse grid at {maxima:?}", .maxima.len())]
    AmbiguousPeak { maxima: Vec<f64> },

    #[error("peak search did not converge: residual slope {residual:e} above tolerance {tolerance:e}")]
    NotConverged { residual: f64, tolerance: f64 },
}
