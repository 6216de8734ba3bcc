//! Exact propagation of the time-independent Hamiltonian by
//! eigendecomposition, single-pulse and Ramsey sequences, and the excited
//! state probabilities read off the final state.
//!
//! The propagator is `U(t) = V exp(-i E t) V^dag`. Because the Hamiltonian is
//! constant during a pulse there is no integrator error; the only
//! approximation is the Fock truncation.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{BasisSpec, PhysicalParams, PulseSchedule, Scaled, Scheme, StateVector};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_scaled, detuning_slope_diagonal, HamiltonianKind, HermitianOperator};

/// Agreement required between a spectrum and its doubled-buffer rerun.
pub const TRUNCATION_TOLERANCE: f64 = 1e-10;

/// Dressed energies (ascending) and the dressed states as orthonormal columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    energies: DVector<f64>,
    vectors: DMatrix<Complex64>,
}

impl EigenDecomposition {
    pub fn new(h: &HermitianOperator) -> Self {
        let eig = SymmetricEigen::new(h.matrix().clone());
        let dim = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let energies = DVector::from_iterator(dim, order.iter().map(|&i| eig.eigenvalues[i]));
        let vectors = DMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
        EigenDecomposition { energies, vectors }
    }

    pub fn dimension(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    pub fn vectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    /// `max |V E V^dag - H|`.
    pub fn reconstruction_error(&self, h: &HermitianOperator) -> f64 {
        let e = DMatrix::from_diagonal(&self.energies.map(|x| Complex64::new(x, 0.0)));
        let rebuilt = &self.vectors * e * self.vectors.adjoint();
        (rebuilt - h.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |V^dag V - I|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.vectors.adjoint() * &self.vectors;
        let mut worst: f64 = 0.0;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).norm());
            }
        }
        worst
    }

    /// `U(t) = exp(-i H t)` as a dense matrix.
    pub fn propagator(&self, t: f64) -> DMatrix<Complex64> {
        let phases = self.phases(t);
        let mut left = self.vectors.clone();
        for (c, p) in phases.iter().enumerate() {
            for r in 0..left.nrows() {
                left[(r, c)] *= p;
            }
        }
        left * self.vectors.adjoint()
    }

    fn phases(&self, t: f64) -> Vec<Complex64> {
        self.energies.iter().map(|&e| Complex64::from_polar(1.0, -e * t)).collect()
    }

    /// `U(t) psi`, without forming `U`.
    pub fn apply(&self, psi: &DVector<Complex64>, t: f64) -> DVector<Complex64> {
        let mut c = self.vectors.adjoint() * psi;
        for (ci, p) in c.iter_mut().zip(self.phases(t)) {
            *ci *= p;
        }
        &self.vectors * c
    }

    /// `U(t) psi` together with `(dU/dlambda) psi` for a perturbation
    /// `dH/dlambda = diag(slope)` in the bare basis.
    ///
    /// The derivative of the matrix exponential in the eigenbasis is
    /// `[V^dag dU V]_ab = [V^dag H' V]_ab (e^{-i e_a t} - e^{-i e_b t}) / (e_a - e_b)`,
    /// evaluated in the form `-i t e^{-i (e_a + e_b) t / 2} sinc((e_a - e_b) t / 2)`
    /// which has no cancellation for nearly degenerate pairs.
    pub fn apply_with_derivative(
        &self,
        psi: &DVector<Complex64>,
        t: f64,
        slope: &[f64],
    ) -> (DVector<Complex64>, DVector<Complex64>) {
        let dim = self.dimension();
        let c = self.vectors.adjoint() * psi;
        let phases = self.phases(t);
        let evolved = &self.vectors * DVector::from_iterator(dim, c.iter().zip(&phases).map(|(a, p)| a * p));

        let mut weighted = self.vectors.clone();
        for r in 0..dim {
            for col in 0..dim {
                weighted[(r, col)] *= slope[r];
            }
        }
        let h_eig = self.vectors.adjoint() * weighted;
        let mut dc = DVector::<Complex64>::zeros(dim);
        for a in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..dim {
                let (ea, eb) = (self.energies[a], self.energies[b]);
                let half = 0.5 * (ea - eb) * t;
                let sinc = if half.abs() < 1e-8 { 1.0 - half * half / 6.0 } else { half.sin() / half };
                let kernel = Complex64::new(0.0, -t) * Complex64::from_polar(1.0, -0.5 * (ea + eb) * t) * sinc;
                acc += h_eig[(a, b)] * kernel * c[b];
            }
            dc[a] = acc;
        }
        (evolved, &self.vectors * dc)
    }
}

/// `psi(t) = sum_a e^{-i e_a t} |e_a><e_a|psi0>` with `t` in internal units
/// (`1/omega_t`), matching the internal units of `h`.
pub fn evolve(h: &HermitianOperator, psi0: &StateVector, t: f64) -> Result<StateVector> {
    if h.dimension() != psi0.dimension() {
        return Err(Error::DimensionMismatch { expected: h.dimension(), got: psi0.dimension() });
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("evolution time must be >= 0, got {t}")));
    }
    let eig = EigenDecomposition::new(h);
    StateVector::from_amplitudes(eig.apply(psi0.amplitudes(), t))
}

/// Excited-state populations after a pulse sequence, plus the total ground
/// population of the full basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPoint {
    delta: f64,
    n0: usize,
    excited: Vec<f64>,
    ground_total: f64,
}

impl SpectrumPoint {
    fn from_state(delta: f64, n0: usize, psi: &DVector<Complex64>) -> Self {
        let levels = psi.len() / 2;
        let excited = (0..levels).map(|n| psi[2 * n + 1].norm_sqr()).collect();
        let ground_total = (0..levels).map(|n| psi[2 * n].norm_sqr()).sum();
        SpectrumPoint { delta, n0, excited, ground_total }
    }

    /// Detuning in internal units (`Delta / omega_t`).
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    /// `P_e = sum_n P_{e,n}` over the whole basis.
    pub fn p_e_total(&self) -> f64 {
        self.excited.iter().sum()
    }

    pub fn p_g_total(&self) -> f64 {
        self.ground_total
    }

    /// `P_{e,n}`; zero outside the basis.
    pub fn partial(&self, n: usize) -> f64 {
        self.excited.get(n).copied().unwrap_or(0.0)
    }

    /// Every `P_{e,n}` of the basis.
    pub fn partials(&self) -> &[f64] {
        &self.excited
    }

    /// Reported window of levels, `max(0, n0 - 2) ..= n0 + 2`.
    pub fn window(&self) -> (usize, usize) {
        (self.n0.saturating_sub(2), self.n0 + 2)
    }

    pub fn window_partials(&self) -> Vec<(usize, f64)> {
        let (lo, hi) = self.window();
        (lo..=hi).map(|n| (n, self.partial(n))).collect()
    }

    /// `P_{e,n0-1}`, zero when `n0 = 0`.
    pub fn red(&self) -> f64 {
        if self.n0 == 0 {
            0.0
        } else {
            self.partial(self.n0 - 1)
        }
    }

    pub fn carrier(&self) -> f64 {
        self.partial(self.n0)
    }

    pub fn blue(&self) -> f64 {
        self.partial(self.n0 + 1)
    }

    /// `P_{e,n0-1} + P_{e,n0} + P_{e,n0+1}`.
    pub fn three_level_sum(&self) -> f64 {
        self.red() + self.carrier() + self.blue()
    }
}

/// Pulse timing converted to internal units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Timing {
    pub tau: f64,
    pub t_free: Option<f64>,
}

impl Timing {
    pub fn new(params: &PhysicalParams, schedule: &PulseSchedule) -> Self {
        let tau = params.scaled_time(schedule.tau());
        let t_free = match schedule.scheme() {
            Scheme::Rabi => None,
            Scheme::Ramsey => Some(params.scaled_time(schedule.t_free())),
        };
        Timing { tau, t_free }
    }
}

fn initial_amplitudes(basis: &BasisSpec) -> DVector<Complex64> {
    StateVector::initial(basis).into_amplitudes()
}

fn free_phases(s: Scaled, dimension: usize, t: f64) -> Vec<Complex64> {
    (0..dimension)
        .map(|i| {
            let n = (i / 2) as f64;
            let e = if i % 2 == 0 { n + 0.5 + 0.5 * s.delta } else { n + 0.5 - 0.5 * s.delta };
            Complex64::from_polar(1.0, -e * t)
        })
        .collect()
}

pub(crate) fn final_state(kind: HamiltonianKind, s: Scaled, basis: &BasisSpec, timing: Timing) -> DVector<Complex64> {
    let eig = EigenDecomposition::new(&build_scaled(kind, s, basis));
    let psi0 = initial_amplitudes(basis);
    let first = eig.apply(&psi0, timing.tau);
    match timing.t_free {
        None => first,
        Some(t) => {
            let mut free = first;
            for (a, p) in free.iter_mut().zip(free_phases(s, basis.dimension(), t)) {
                *a *= p;
            }
            eig.apply(&free, timing.tau)
        }
    }
}

/// Final state and its derivative with respect to the internal detuning.
pub(crate) fn final_state_with_slope(
    kind: HamiltonianKind,
    s: Scaled,
    basis: &BasisSpec,
    timing: Timing,
) -> (DVector<Complex64>, DVector<Complex64>) {
    let dim = basis.dimension();
    let slope = detuning_slope_diagonal(dim);
    let eig = EigenDecomposition::new(&build_scaled(kind, s, basis));
    let psi0 = initial_amplitudes(basis);
    let (a, da) = eig.apply_with_derivative(&psi0, timing.tau, &slope);
    let Some(t) = timing.t_free else {
        return (a, da);
    };
    let phases = free_phases(s, dim, t);
    // U_B is diagonal, dU_B/dDelta = -i t diag(slope) U_B
    let b = DVector::from_iterator(dim, a.iter().zip(&phases).map(|(x, p)| x * p));
    let db = DVector::from_iterator(
        dim,
        (0..dim).map(|i| da[i] * phases[i] + Complex64::new(0.0, -t * slope[i]) * phases[i] * a[i]),
    );
    let (c, dc_from_u) = eig.apply_with_derivative(&b, timing.tau, &slope);
    let dc = dc_from_u + eig.apply(&db, timing.tau);
    (c, dc)
}

/// `P_e` and `dP_e/dDelta` (internal units) from a state and its derivative.
pub(crate) fn excited_and_slope(psi: &DVector<Complex64>, dpsi: &DVector<Complex64>) -> (f64, f64) {
    let levels = psi.len() / 2;
    let mut p = 0.0;
    let mut dp = 0.0;
    for n in 0..levels {
        let (e, de) = (psi[2 * n + 1], dpsi[2 * n + 1]);
        p += e.norm_sqr();
        dp += 2.0 * (e.conj() * de).re;
    }
    (p, dp)
}

/// Final state of the pulse sequence starting from `|g, n0>`.
pub fn propagate(
    kind: HamiltonianKind,
    params: &PhysicalParams,
    basis: &BasisSpec,
    schedule: &PulseSchedule,
) -> Result<StateVector> {
    StateVector::from_amplitudes(final_state(kind, params.scaled(), basis, Timing::new(params, schedule)))
}

/// Excited-state populations after the pulse sequence.
pub fn spectrum_point(
    kind: HamiltonianKind,
    params: &PhysicalParams,
    basis: &BasisSpec,
    schedule: &PulseSchedule,
) -> SpectrumPoint {
    let s = params.scaled();
    let psi = final_state(kind, s, basis, Timing::new(params, schedule));
    SpectrumPoint::from_state(s.delta, basis.n0(), &psi)
}

/// Single square pulse of length `tau` (seconds) on the full Hamiltonian,
/// starting from `|g, n0>` with `n0` taken from `basis`.
pub fn rabi_pulse(params: &PhysicalParams, basis: &BasisSpec, tau: f64) -> Result<SpectrumPoint> {
    Ok(spectrum_point(HamiltonianKind::Full, params, basis, &PulseSchedule::rabi(tau)?))
}

/// Two pulses of length `tau` separated by free evolution under the bare
/// Hamiltonian for `t_free` (both in seconds).
pub fn ramsey_sequence(
    params: &PhysicalParams,
    basis: &BasisSpec,
    tau: f64,
    t_free: f64,
) -> Result<SpectrumPoint> {
    Ok(spectrum_point(HamiltonianKind::Full, params, basis, &PulseSchedule::ramsey(tau, t_free)?))
}

/// Spectra on a detuning grid (rad/s), evaluated in parallel and returned in grid order.
pub fn spectrum(
    kind: HamiltonianKind,
    params: &PhysicalParams,
    basis: &BasisSpec,
    schedule: &PulseSchedule,
    delta_grid: &[f64],
) -> Vec<SpectrumPoint> {
    delta_grid
        .par_iter()
        .map(|&d| spectrum_point(kind, &params.with_delta(d), basis, schedule))
        .collect()
}

/// `P_e` and `dP_e/dDelta` (per rad/s) for the pulse sequence, with the
/// derivative taken exactly through the matrix exponential.
pub fn excited_probability_slope(
    kind: HamiltonianKind,
    params: &PhysicalParams,
    basis: &BasisSpec,
    schedule: &PulseSchedule,
) -> (f64, f64) {
    let (p, dp) = scaled_probability_slope(kind, params.scaled(), basis, Timing::new(params, schedule));
    (p, dp / params.omega_t())
}

pub(crate) fn scaled_probability_slope(
    kind: HamiltonianKind,
    s: Scaled,
    basis: &BasisSpec,
    timing: Timing,
) -> (f64, f64) {
    let (psi, dpsi) = final_state_with_slope(kind, s, basis, timing);
    excited_and_slope(&psi, &dpsi)
}

/// Probability of finding the ion in the state reached by a resonant pi/2
/// pulse at `eta = 0`, `(|g> - i|e>)/sqrt 2` in the sign convention of the
/// Hamiltonian used here:
///
/// `F = 1/2 sum_n |g_n(tau) + i e_n(tau)|^2`, with `tau = pi/(2 omega_r)`.
///
/// The detuning of `params` is ignored; the pulse is resonant.
pub fn fidelity_pi_half(params: &PhysicalParams, basis: &BasisSpec) -> Result<f64> {
    let resonant = params.with_delta(0.0);
    let schedule = PulseSchedule::rabi(resonant.tau_pi_half())?;
    let psi = final_state(HamiltonianKind::Full, resonant.scaled(), basis, Timing::new(&resonant, &schedule));
    let i = Complex64::new(0.0, 1.0);
    Ok(0.5 * (0..basis.levels()).map(|n| (psi[2 * n] + i * psi[2 * n + 1]).norm_sqr()).sum::<f64>())
}

/// Reruns the spectrum with twice the buffer above `n0` and returns the
/// largest change of any `P_{e,n}` on the grid. Fails if it exceeds
/// [`TRUNCATION_TOLERANCE`].
pub fn certify_truncation(
    kind: HamiltonianKind,
    params: &PhysicalParams,
    basis: &BasisSpec,
    schedule: &PulseSchedule,
    delta_grid: &[f64],
) -> Result<f64> {
    let wide = basis.doubled_buffer();
    let a = spectrum(kind, params, basis, schedule, delta_grid);
    let b = spectrum(kind, params, &wide, schedule, delta_grid);
    let worst = a
        .iter()
        .zip(&b)
        .flat_map(|(x, y)| (0..wide.levels()).map(move |n| (x.partial(n) - y.partial(n)).abs()))
        .fold(0.0, f64::max);
    if worst > TRUNCATION_TOLERANCE {
        return Err(Error::NotConverged { residual: worst, tolerance: TRUNCATION_TOLERANCE });
    }
    Ok(worst)
}
