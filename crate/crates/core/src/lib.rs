//! Motional (sideband-induced) frequency shifts of the carrier line of a
//! laser-driven trapped two-level ion in the Lamb-Dicke regime.
//!
//! The crate computes exact excitation spectra by diagonalising the
//! time-independent trapped-ion Hamiltonian in a truncated Fock basis,
//! provides the perturbative closed forms for single-pulse (Rabi) and
//! two-pulse (Ramsey) excitation, and locates the carrier peak of any of
//! these line shapes to obtain the frequency shift.
//!
//! Internally every frequency is expressed in units of the trap frequency
//! and `hbar = 1`; time is measured in units of `1/omega_t`. Public
//! entry points that take [`PhysicalParams`] accept angular frequencies in
//! rad/s and times in seconds and do the conversion themselves.
//!
//! Module map:
//!
//! * [`basis`]: parameters, truncated bare basis, state vectors, pulse timing.
//! * [`hamiltonian`]: full, Lamb-Dicke, bare and semidressed Hamiltonians.
//! * [`propagation`]: exact propagation by eigendecomposition, Rabi and
//!   Ramsey sequences, fidelity of a pi/2 pulse.
//! * [`analytic`]: closed-form probabilities and shift formulas.
//! * [`shift`]: carrier-peak location and shift curves.
//! * [`ions`]: reference ion data for estimate tables.

pub mod analytic;
pub mod basis;
mod error;
pub mod hamiltonian;
pub mod ions;
pub mod propagation;
mod roots;
pub mod shift;

pub use basis::{
    lamb_dicke_parameter, make_params, BareIndex, BasisSpec, Internal, PhysicalParams,
    PulseSchedule, Scheme, StateVector,
};
pub use error::{Error, Result};
pub use hamiltonian::{HamiltonianKind, HermitianOperator};
pub use propagation::{EigenDecomposition, SpectrumPoint};
pub use shift::{ShiftResult, ShiftSource};

/// Reduced Planck constant [J s] (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Unified atomic mass unit [kg] (CODATA 2018).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
