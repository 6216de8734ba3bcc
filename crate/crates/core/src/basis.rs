//! Physical parameters, the truncated bare basis and state vectors.
//!
//! Bare states `|g,n>` and `|e,n>` are stored in a flat vector with
//! `flat = 2n` for the ground state and `flat = 2n + 1` for the excited
//! state, so the two internal levels of each Fock state sit next to each
//! other.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{ATOMIC_MASS_UNIT, HBAR};

/// Lamb-Dicke parameter `sqrt(hbar k^2 / (2 m omega_t))` with `k = 2 pi / wavelength`.
///
/// `mass` in kg, `wavelength` in m and `trap_freq` in rad/s.
pub fn lamb_dicke_parameter(mass: f64, wavelength: f64, trap_freq: f64) -> Result<f64> {
    for (name, v) in [("mass", mass), ("wavelength", wavelength), ("trap_freq", trap_freq)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
        }
    }
    let k = 2.0 * PI / wavelength;
    Ok((HBAR * k * k / (2.0 * mass * trap_freq)).sqrt())
}

/// Same as [`lamb_dicke_parameter`] with the mass in unified atomic mass units.
pub fn lamb_dicke_parameter_u(mass_u: f64, wavelength: f64, trap_freq: f64) -> Result<f64> {
    lamb_dicke_parameter(mass_u * ATOMIC_MASS_UNIT, wavelength, trap_freq)
}

/// One experiment point: Lamb-Dicke parameter, trap frequency, Rabi
/// frequency and laser detuning `Delta = omega_L - omega_0` (all angular, rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    eta: f64,
    omega_t: f64,
    omega_r: f64,
    delta: f64,
}

/// Parameters in internal units: frequencies divided by `omega_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    pub eta: f64,
    pub omega_r: f64,
    pub delta: f64,
}

impl Scaled {
    pub fn omega_eff(&self) -> f64 {
        self.omega_r.hypot(self.delta)
    }

    pub fn with_delta(self, delta: f64) -> Self {
        Scaled { delta, ..self }
    }
}

impl PhysicalParams {
    pub fn new(eta: f64, omega_t: f64, omega_r: f64, delta: f64) -> Result<Self> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParams(format!("eta must be >= 0, got {eta}")));
        }
        if !(omega_t > 0.0) || !omega_t.is_finite() {
            return Err(Error::InvalidParams(format!("omega_t must be > 0, got {omega_t}")));
        }
        if !(omega_r >= 0.0) || !omega_r.is_finite() {
            return Err(Error::InvalidParams(format!("omega_r must be >= 0, got {omega_r}")));
        }
        if !delta.is_finite() {
            return Err(Error::InvalidParams(format!("delta must be finite, got {delta}")));
        }
        Ok(PhysicalParams { eta, omega_t, omega_r, delta })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn omega_t(&self) -> f64 {
        self.omega_t
    }

    pub fn omega_r(&self) -> f64 {
        self.omega_r
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Intensity ratio `omega_r / omega_t`.
    pub fn alpha(&self) -> f64 {
        self.omega_r / self.omega_t
    }

    /// Effective (detuning dependent) Rabi frequency `sqrt(omega_r^2 + delta^2)`.
    pub fn omega_eff(&self) -> f64 {
        self.omega_r.hypot(self.delta)
    }

    /// Duration of a resonant pi pulse, `pi / omega_r`.
    pub fn tau_pi(&self) -> f64 {
        PI / self.omega_r
    }

    /// Duration of a resonant pi/2 pulse, `pi / (2 omega_r)`.
    pub fn tau_pi_half(&self) -> f64 {
        0.5 * PI / self.omega_r
    }

    pub fn with_delta(&self, delta: f64) -> Self {
        PhysicalParams { delta, ..*self }
    }

    pub fn with_eta(&self, eta: f64) -> Result<Self> {
        Self::new(eta, self.omega_t, self.omega_r, self.delta)
    }

    pub fn with_omega_r(&self, omega_r: f64) -> Result<Self> {
        Self::new(self.eta, self.omega_t, omega_r, self.delta)
    }

    pub(crate) fn scaled(&self) -> Scaled {
        Scaled {
            eta: self.eta,
            omega_r: self.omega_r / self.omega_t,
            delta: self.delta / self.omega_t,
        }
    }

    /// Converts a time in seconds to internal units (`omega_t t`).
    pub(crate) fn scaled_time(&self, t: f64) -> f64 {
        t * self.omega_t
    }
}

/// Builds [`PhysicalParams`]; kept as a free function for symmetry with the
/// other constructors in this crate.
pub fn make_params(eta: f64, omega_t: f64, omega_r: f64, delta: f64) -> Result<PhysicalParams> {
    PhysicalParams::new(eta, omega_t, omega_r, delta)
}

/// Number of Fock levels kept above the initial level by default.
pub const DEFAULT_BUFFER: usize = 8;
/// Smallest allowed gap between the initial level and the truncation edge.
pub const MIN_BUFFER: usize = 4;

/// Truncated bare basis `{|g,n>, |e,n>}` for `n = 0..=n_max` with an
/// initial vibrational level `n0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisSpec {
    n_max: usize,
    n0: usize,
}

impl BasisSpec {
    pub fn new(n_max: usize, n0: usize) -> Result<Self> {
        if n0 + MIN_BUFFER > n_max {
            return Err(Error::InvalidParams(format!(
                "n0 = {n0} needs n_max >= n0 + {MIN_BUFFER}, got n_max = {n_max}"
            )));
        }
        Ok(BasisSpec { n_max, n0 })
    }

    /// `n_max = n0 + 8`.
    pub fn with_default_truncation(n0: usize) -> Self {
        BasisSpec { n_max: n0 + DEFAULT_BUFFER, n0 }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn levels(&self) -> usize {
        self.n_max + 1
    }

    pub fn dimension(&self) -> usize {
        2 * (self.n_max + 1)
    }

    /// Same initial level with the buffer above it doubled.
    pub fn doubled_buffer(&self) -> Self {
        let buffer = self.n_max - self.n0;
        BasisSpec { n_max: self.n0 + 2 * buffer, n0: self.n0 }
    }

    pub fn with_n0(&self, n0: usize) -> Result<Self> {
        Self::new(self.n_max.max(n0 + MIN_BUFFER), n0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Internal {
    Ground,
    Excited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BareIndex {
    pub internal: Internal,
    pub n: usize,
}

impl BareIndex {
    pub fn ground(n: usize) -> Self {
        BareIndex { internal: Internal::Ground, n }
    }

    pub fn excited(n: usize) -> Self {
        BareIndex { internal: Internal::Excited, n }
    }

    pub fn flat(&self) -> usize {
        2 * self.n
            + match self.internal {
                Internal::Ground => 0,
                Internal::Excited => 1,
            }
    }

    pub fn from_flat(flat: usize) -> Self {
        let internal = if flat % 2 == 0 { Internal::Ground } else { Internal::Excited };
        BareIndex { internal, n: flat / 2 }
    }
}

/// Complex amplitudes over the bare basis in flat order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// The bare state `index` in a basis of the given dimension.
    pub fn bare(basis: &BasisSpec, index: BareIndex) -> Result<Self> {
        if index.n > basis.n_max() {
            return Err(Error::Domain(format!(
                "level {} outside the basis (n_max = {})",
                index.n,
                basis.n_max()
            )));
        }
        let mut amplitudes = DVector::zeros(basis.dimension());
        amplitudes[index.flat()] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amplitudes })
    }

    /// `|g, n0>`.
    pub fn initial(basis: &BasisSpec) -> Self {
        Self::bare(basis, BareIndex::ground(basis.n0())).expect("n0 is inside the basis")
    }

    pub fn from_amplitudes(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() % 2 != 0 || amplitudes.is_empty() {
            return Err(Error::Domain(format!(
                "state vector length must be even and non-zero, got {}",
                amplitudes.len()
            )));
        }
        Ok(StateVector { amplitudes })
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex64> {
        self.amplitudes
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn levels(&self) -> usize {
        self.amplitudes.len() / 2
    }

    pub fn amplitude(&self, index: BareIndex) -> Complex64 {
        self.amplitudes[index.flat()]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|g_n|^2` for every retained level.
    pub fn ground_populations(&self) -> Vec<f64> {
        (0..self.levels()).map(|n| self.amplitudes[2 * n].norm_sqr()).collect()
    }

    /// `|e_n|^2` for every retained level.
    pub fn excited_populations(&self) -> Vec<f64> {
        (0..self.levels()).map(|n| self.amplitudes[2 * n + 1].norm_sqr()).collect()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Rabi,
    Ramsey,
}

/// Square-pulse timing: one pulse of length `tau`, or two pulses of length
/// `tau` separated by a free evolution of length `t_free`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSchedule {
    scheme: Scheme,
    tau: f64,
    t_free: f64,
}

impl PulseSchedule {
    pub fn rabi(tau: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::InvalidParams(format!("tau must be > 0, got {tau}")));
        }
        Ok(PulseSchedule { scheme: Scheme::Rabi, tau, t_free: 0.0 })
    }

    pub fn ramsey(tau: f64, t_free: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::InvalidParams(format!("tau must be > 0, got {tau}")));
        }
        if !(t_free >= 0.0) || !t_free.is_finite() {
            return Err(Error::InvalidParams(format!("t_free must be >= 0, got {t_free}")));
        }
        Ok(PulseSchedule { scheme: Scheme::Ramsey, tau, t_free })
    }

    /// Two resonant pi/2 pulses for the given Rabi frequency with `t_free` between them.
    pub fn ramsey_pi_half(params: &PhysicalParams, t_free: f64) -> Result<Self> {
        if !(params.omega_r() > 0.0) {
            return Err(Error::InvalidParams("a pi/2 pulse needs omega_r > 0".into()));
        }
        Self::ramsey(params.tau_pi_half(), t_free)
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn t_free(&self) -> f64 {
        self.t_free
    }

    /// Total duration: `tau` for Rabi, `2 tau + t_free` for Ramsey.
    pub fn t_total(&self) -> f64 {
        match self.scheme {
            Scheme::Rabi => self.tau,
            Scheme::Ramsey => 2.0 * self.tau + self.t_free,
        }
    }
}
