//! Closed-form probabilities and frequency shifts in the Lamb-Dicke regime.
//!
//! The probability expressions are written once, generically over
//! [`Analytic`], so the same code evaluates them at real detuning and at a
//! complex detuning for complex-step differentiation. Detuning is the only
//! argument that is ever complex.
//!
//! Functions taking [`PhysicalParams`] expect rad/s and seconds and return
//! rad/s. The `*_scaled` helpers work in units of the trap frequency.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::basis::{BareIndex, BasisSpec, PhysicalParams, StateVector};
use crate::error::{Error, Result};
use crate::hamiltonian::displacement_element;

/// Guard band around the Rabi resonance `Omega = omega_t`.
pub const RABI_RESONANCE_GUARD: f64 = 1e-6;
/// Half-width of the series window around the removable points of [`shift_fn_f`].
pub const SHIFT_FN_SERIES_WINDOW: f64 = 1e-4;

const COMPLEX_STEP: f64 = 1e-30;

/// Scalar that the closed forms can be evaluated on: `f64`, or `Complex64`
/// for complex-step derivatives.
pub trait Analytic:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn lift(x: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn real(self) -> f64;

    fn square(self) -> Self {
        self * self
    }
}

impl Analytic for f64 {
    fn lift(x: f64) -> Self {
        x
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn real(self) -> f64 {
        self
    }
}

impl Analytic for Complex64 {
    fn lift(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn sin(self) -> Self {
        Complex64::sin(self)
    }
    fn cos(self) -> Self {
        Complex64::cos(self)
    }
    fn sqrt(self) -> Self {
        Complex64::sqrt(self)
    }
    fn real(self) -> f64 {
        self.re
    }
}

/// `f'(x)` as `Im f(x + i h) / h` with a step far below rounding.
pub fn complex_step_derivative<F: Fn(Complex64) -> Complex64>(f: F, x: f64) -> f64 {
    let h = COMPLEX_STEP * x.abs().max(1.0);
    f(Complex64::new(x, h)).im / h
}

fn check_rabi_resonance(omega_eff: f64) -> Result<()> {
    let relative_gap = (omega_eff - 1.0).abs();
    if relative_gap < RABI_RESONANCE_GUARD {
        return Err(Error::RabiResonance { relative_gap });
    }
    Ok(())
}

/// Excited-state probabilities of the initial level and its two neighbours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiProbTriple {
    /// `P_{e,n0-1}`
    pub p_red: f64,
    /// `P_{e,n0}`
    pub p_car: f64,
    /// `P_{e,n0+1}`
    pub p_blue: f64,
}

impl RabiProbTriple {
    pub fn sum(&self) -> f64 {
        self.p_red + self.p_car + self.p_blue
    }
}

/// Six-state probabilities after a pulse of internal duration `tau`, with
/// `omega_t = 1`.
pub(crate) fn sixstate_scaled<T: Analytic>(eta: f64, wr: f64, delta: T, n0: usize, tau: f64) -> [T; 3] {
    let w = (delta * delta + wr * wr).sqrt();
    let w2 = w * w;
    let pre = T::lift(eta * eta * wr * wr) / (w2 * (T::lift(1.0) - w2).square());
    let (c, s) = ((w * (0.5 * tau)).cos(), (w * (0.5 * tau)).sin());
    let (ct, st) = ((0.5 * tau).cos(), (0.5 * tau).sin());
    let red = pre * (((delta - 1.0) * w * c * st + (w2 - delta) * s * ct).square()) * n0 as f64;
    let blue = pre * (((delta + 1.0) * w * c * st - (w2 + delta) * s * ct).square()) * (n0 + 1) as f64;
    let wt2 = w * (0.5 * tau);
    let side = (T::lift(tau) - wt2).sin() / (T::lift(1.0) - w).square()
        - (T::lift(tau) + wt2).sin() / (T::lift(1.0) + w).square();
    let car = (T::lift(wr) / w).square() * s.square()
        + s * side * (eta * eta * wr.powi(4) * (2 * n0 + 1) as f64) / (w2 * 4.0);
    [red, car, blue]
}

fn sixstate_guard(wr: f64, delta: f64) -> Result<()> {
    if !(wr > 0.0) {
        return Err(Error::InvalidParams("closed forms need omega_r > 0".into()));
    }
    check_rabi_resonance(wr.hypot(delta))
}

/// Probabilities of the carrier and first sidebands after a pulse of
/// length `tau` (seconds) from `|g, n0>`, to second order in `eta`.
///
/// Singular at the Rabi resonance `Omega = omega_t`; inside the guard band
/// this returns [`Error::RabiResonance`] and [`four_state_model`] should be used.
pub fn rabi_probs_sixstate(params: &PhysicalParams, n0: usize, tau: f64) -> Result<RabiProbTriple> {
    let s = params.scaled();
    sixstate_guard(s.omega_r, s.delta)?;
    let [p_red, p_car, p_blue] = sixstate_scaled(s.eta, s.omega_r, s.delta, n0, params.scaled_time(tau));
    Ok(RabiProbTriple { p_red, p_car, p_blue })
}

/// `Omega_{n,n+k}` in units of `omega_t`, as a magnitude.
fn sideband_coupling(eta: f64, wr: f64, n: usize, k: i64) -> Result<f64> {
    let m = n as i64 + k;
    if m < 0 {
        return Err(Error::Domain(format!("level n + k = {m} is negative")));
    }
    Ok(wr * displacement_element(n, m as usize, eta).norm())
}

pub(crate) fn vrwa_scaled<T: Analytic>(coupling: f64, k: i64, delta: T, tau: f64) -> T {
    let c2 = coupling * coupling;
    let f2 = (delta - k as f64).square() + c2;
    let f = f2.sqrt();
    (f * (0.5 * tau)).sin().square() * c2 / f2
}

/// Independent two-level probability of the `k`-th sideband starting from
/// level `n` when the vibrational RWA is applied:
/// `|Omega_{n,n+k}/f|^2 sin^2(f tau/2)`, `f = sqrt((Delta - k omega_t)^2 + Omega_{n,n+k}^2)`.
pub fn vrwa_prob(params: &PhysicalParams, n: usize, k: i64, tau: f64) -> Result<f64> {
    let s = params.scaled();
    let coupling = sideband_coupling(s.eta, s.omega_r, n, k)?;
    Ok(vrwa_scaled(coupling, k, s.delta, params.scaled_time(tau)))
}

/// Couplings of the red, carrier and blue two-level problems from `n0`.
pub(crate) fn vrwa_couplings(eta: f64, wr: f64, n0: usize) -> Vec<(i64, f64)> {
    (-1..=1)
        .filter_map(|k| sideband_coupling(eta, wr, n0, k).ok().map(|c| (k, c)))
        .collect()
}

/// Removable-point-safe evaluation of
/// `f(xi) = sin xi / (xi sin xi - 4 sin^2(xi/2))`.
///
/// At `xi = 2 pi k` numerator and denominator vanish together; within
/// [`SHIFT_FN_SERIES_WINDOW`] of those points the series
/// `1 / (2 pi k - e^3/12 - e^5/120)`, `e = xi - 2 pi k`, is used. The
/// remaining zeros of the denominator (solutions of `tan(xi/2) = xi/2`)
/// are poles and return [`Error::Pole`].
pub fn shift_fn_f(xi: f64) -> Result<f64> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::Domain(format!("shift function needs xi > 0, got {xi}")));
    }
    let k = (xi / (2.0 * PI)).round();
    let eps = xi - 2.0 * PI * k;
    if k >= 1.0 && eps.abs() < SHIFT_FN_SERIES_WINDOW {
        let e3 = eps * eps * eps;
        return Ok(1.0 / (2.0 * PI * k - e3 / 12.0 - e3 * eps * eps / 120.0));
    }
    let num = xi.sin();
    let half = (0.5 * xi).sin();
    let den = xi * num - 4.0 * half * half;
    // xi sin xi - 4 sin^2(xi/2) = 2 sin(xi/2) (xi cos(xi/2) - 2 sin(xi/2))
    let reduced = xi * (0.5 * xi).cos() - 2.0 * half;
    if reduced.abs() < 1e-13 * xi.max(1.0) {
        let sign = if den == 0.0 { num.signum() } else { (num / den).signum() };
        return Err(Error::Pole { xi, sign });
    }
    Ok(num / den)
}

/// Carrier shift after a pulse of length `tau`:
/// `delta = omega_r eta^2 alpha^2 f(omega_r tau) sin(omega_t tau)`.
pub fn rabi_shift(params: &PhysicalParams, tau: f64) -> Result<f64> {
    let (wr, eta, a) = (params.omega_r(), params.eta(), params.alpha());
    Ok(wr * eta * eta * a * a * shift_fn_f(wr * tau)? * (params.omega_t() * tau).sin())
}

/// Envelope of [`rabi_shift`], obtained by replacing `sin(omega_t tau)` by
/// `+-1`. Returned as `(lower, upper)`.
pub fn rabi_shift_bounds(params: &PhysicalParams, tau: f64) -> Result<(f64, f64)> {
    let (wr, eta, a) = (params.omega_r(), params.eta(), params.alpha());
    let b = (wr * eta * eta * a * a * shift_fn_f(wr * tau)?).abs();
    Ok((-b, b))
}

/// Shift after a resonant pi pulse, where the leading term vanishes:
/// `omega_r eta^2 alpha^3 cos^2(omega_t tau_pi / 2)`, never negative.
pub fn rabi_shift_pi_pulse(params: &PhysicalParams) -> f64 {
    let (wr, eta, a) = (params.omega_r(), params.eta(), params.alpha());
    let c = (0.5 * params.omega_t() * params.tau_pi()).cos();
    wr * eta * eta * a.powi(3) * c * c
}

/// `(cos(omega_t T_t / 2), sin(omega_t T / 2))` with `T_t = 2 tau + T`.
fn ramsey_phases(params: &PhysicalParams, tau: f64, t_free: f64) -> (f64, f64) {
    let wt = params.omega_t();
    ((0.5 * wt * (2.0 * tau + t_free)).cos(), (0.5 * wt * t_free).sin())
}

fn ramsey_prefactor(params: &PhysicalParams, t_free: f64) -> f64 {
    let (wr, eta, a) = (params.omega_r(), params.eta(), params.alpha());
    wr * eta * eta * a * a * 2.0 / (2.0 + wr * t_free)
}

/// Shift of the central Ramsey fringe for two pulses of length `tau`
/// separated by `t_free`, to next-to-leading order in `alpha`:
///
/// `omega_r eta^2 alpha^2 (2/(2 + omega_r T)) [c s + alpha (c^2 + s^2)]`
/// with `c = cos(omega_t T_t/2)`, `s = sin(omega_t T/2)`.
pub fn ramsey_shift(params: &PhysicalParams, tau: f64, t_free: f64) -> f64 {
    let (c, s) = ramsey_phases(params, tau, t_free);
    ramsey_prefactor(params, t_free) * (c * s + params.alpha() * (c * c + s * s))
}

/// Leading order in `alpha` of [`ramsey_shift`].
pub fn ramsey_shift_leading(params: &PhysicalParams, tau: f64, t_free: f64) -> f64 {
    let (c, s) = ramsey_phases(params, tau, t_free);
    ramsey_prefactor(params, t_free) * c * s
}

/// `(lower, upper) = -+ 2 omega_r eta^2 alpha^2 / (2 + omega_r T)`.
pub fn ramsey_shift_bounds(params: &PhysicalParams, t_free: f64) -> (f64, f64) {
    let b = ramsey_prefactor(params, t_free).abs();
    (-b, b)
}

/// Ramsey shift before the small-`alpha` reduction:
/// `omega_r eta^2 alpha^2/(1 - alpha^2)^2 (2/(2 + T omega_r)) (c + alpha s)(alpha c + s)`.
pub fn ramsey_shift_full(params: &PhysicalParams, tau: f64, t_free: f64) -> f64 {
    let (c, s) = ramsey_phases(params, tau, t_free);
    let a = params.alpha();
    ramsey_prefactor(params, t_free) / (1.0 - a * a).powi(2) * (c + a * s) * (a * c + s)
}

pub(crate) fn ramsey_near_resonance_scaled<T: Analytic>(
    eta: f64,
    wr: f64,
    delta: T,
    n0: usize,
    tau: f64,
    t_free: f64,
) -> [T; 3] {
    let a = wr;
    let c = (0.5 * (2.0 * tau + t_free)).cos();
    let s = (0.5 * t_free).sin();
    let pre = eta * eta / (1.0 - a * a).powi(2);
    let even = (a * a * c + a * s).powi(2);
    let odd = delta * (a * (2.0 + t_free * wr) * (c + a * s) * (a * c + s));
    let red = (T::lift(even) - odd) * (pre * n0 as f64);
    let blue = (odd + even) * (pre * (n0 + 1) as f64);
    let curvature = 1.0 / (wr * wr) + t_free / wr + 0.25 * t_free * t_free;
    let car = T::lift(1.0) - delta * delta * curvature;
    [red, car, blue]
}

/// Near-resonance (`|Delta| << omega_r`) probabilities after the Ramsey
/// sequence, to leading order in `eta`, with the full `(1 - alpha^2)^-2`
/// prefactor. `N = n0` for the red and `n0 + 1` for the blue sideband.
pub fn ramsey_probs_near_resonance(
    params: &PhysicalParams,
    n0: usize,
    tau: f64,
    t_free: f64,
) -> Result<RabiProbTriple> {
    let s = params.scaled();
    if !(s.omega_r > 0.0) {
        return Err(Error::InvalidParams("closed forms need omega_r > 0".into()));
    }
    let [p_red, p_car, p_blue] = ramsey_near_resonance_scaled(
        s.eta,
        s.omega_r,
        s.delta,
        n0,
        params.scaled_time(tau),
        params.scaled_time(t_free),
    );
    Ok(RabiProbTriple { p_red, p_car, p_blue })
}

/// `<e0_{n,s}| V |e0_{n',s'}>` in units of `omega_t` between semidressed
/// states: `i eta s' Omega / sqrt(N_s N_s') (sqrt(n') d_{n,n'-1} + sqrt(n'+1) d_{n,n'+1})`
/// for `s != s'`, zero otherwise.
pub fn semidressed_coupling(params: &PhysicalParams, n: usize, s: i8, n_prime: usize, s_prime: i8) -> Result<Complex64> {
    let sc = params.scaled();
    if !(sc.omega_r > 0.0) {
        return Err(Error::InvalidParams("semidressed states need omega_r > 0".into()));
    }
    if s == s_prime {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let omega = sc.omega_eff();
    let norm = |sign: i8| 2.0 * omega * (omega + sign as f64 * sc.delta) / (sc.omega_r * sc.omega_r);
    let ladder = if n + 1 == n_prime {
        (n_prime as f64).sqrt()
    } else if n == n_prime + 1 {
        (n_prime as f64 + 1.0).sqrt()
    } else {
        0.0
    };
    let value = sc.eta * s_prime as f64 * omega / (norm(s) * norm(s_prime)).sqrt() * ladder;
    Ok(Complex64::new(0.0, value))
}

/// Zeroth-order semidressed states of level `n` and their first-order
/// admixture of the neighbouring levels.
///
/// Energies and mixing coefficients are in units of `omega_t`. The
/// coefficients follow from the coupling element of
/// [`semidressed_coupling`], whose magnitude between `s = -s'` states is
/// `eta omega_r sqrt(n) / 2`:
///
/// `|e_{n,+-}> = |e0_{n,+-}> +- i eta omega_r sqrt(n) / (2 (omega_t +- Omega)) |e0_{n-1,-+}>
///               +- i eta omega_r sqrt(n+1) / (2 (-omega_t +- Omega)) |e0_{n+1,-+}>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemidressedCorrection {
    n: usize,
    eta: f64,
    omega_r: f64,
    delta: f64,
    omega: f64,
}

impl SemidressedCorrection {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `E_n + s Omega / 2`.
    pub fn energy(&self, sign: i8) -> f64 {
        self.n as f64 + 0.5 + 0.5 * sign as f64 * self.omega
    }

    /// `N_s = 2 Omega (Omega + s Delta) / omega_r^2`.
    pub fn normalization(&self, sign: i8) -> f64 {
        2.0 * self.omega * (self.omega + sign as f64 * self.delta) / (self.omega_r * self.omega_r)
    }

    /// Ground-state weight `(Delta + s Omega) / omega_r` before normalisation.
    fn ground_weight(&self, sign: i8) -> f64 {
        (self.delta + sign as f64 * self.omega) / self.omega_r
    }

    /// Coefficient of `|e0_{n-1,-s}>` in the corrected `|e_{n,s}>`.
    pub fn lower_mixing(&self, sign: i8) -> Complex64 {
        let s = sign as f64;
        Complex64::new(0.0, s * self.eta * self.omega_r * (self.n as f64).sqrt() / (2.0 * (1.0 + s * self.omega)))
    }

    /// Coefficient of `|e0_{n+1,-s}>` in the corrected `|e_{n,s}>`.
    pub fn upper_mixing(&self, sign: i8) -> Complex64 {
        let s = sign as f64;
        Complex64::new(
            0.0,
            s * self.eta * self.omega_r * (self.n as f64 + 1.0).sqrt() / (2.0 * (-1.0 + s * self.omega)),
        )
    }

    /// First-order energy correction `<e0_{n,s}|V|e0_{n,s}>`; identically zero.
    pub fn first_order_energy_shift(&self, sign: i8) -> f64 {
        // V only connects n to n +- 1 and s to -s
        let _ = sign;
        0.0
    }

    fn add_zeroth(&self, amplitudes: &mut [Complex64], level: usize, sign: i8, weight: Complex64) {
        let norm = self.normalization(sign).sqrt();
        amplitudes[BareIndex::ground(level).flat()] += weight * (self.ground_weight(sign) / norm);
        amplitudes[BareIndex::excited(level).flat()] += weight * (1.0 / norm);
    }

    /// `|e0_{n,s}>` in the given basis.
    pub fn zeroth_state(&self, basis: &BasisSpec, sign: i8) -> Result<StateVector> {
        self.check_level(basis, self.n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.dimension()];
        self.add_zeroth(&mut amps, self.n, sign, Complex64::new(1.0, 0.0));
        StateVector::from_amplitudes(amps.into())
    }

    /// First-order corrected `|e_{n,s}>`, normalised.
    pub fn corrected_state(&self, basis: &BasisSpec, sign: i8) -> Result<StateVector> {
        self.check_level(basis, self.n + 1)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); basis.dimension()];
        self.add_zeroth(&mut amps, self.n, sign, Complex64::new(1.0, 0.0));
        if self.n > 0 {
            self.add_zeroth(&mut amps, self.n - 1, -sign, self.lower_mixing(sign));
        }
        self.add_zeroth(&mut amps, self.n + 1, -sign, self.upper_mixing(sign));
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        StateVector::from_amplitudes(amps.iter().map(|z| z / norm).collect::<Vec<_>>().into())
    }

    fn check_level(&self, basis: &BasisSpec, level: usize) -> Result<()> {
        if level > basis.n_max() {
            return Err(Error::Domain(format!("level {level} outside the basis (n_max = {})", basis.n_max())));
        }
        Ok(())
    }
}

/// Semidressed states of Fock level `n`.
pub fn semidressed_states(params: &PhysicalParams, n: usize) -> Result<SemidressedCorrection> {
    let s = params.scaled();
    if !(s.omega_r > 0.0) {
        return Err(Error::InvalidParams("semidressed states need omega_r > 0".into()));
    }
    let omega = s.omega_eff();
    check_rabi_resonance(omega)?;
    Ok(SemidressedCorrection { n, eta: s.eta, omega_r: s.omega_r, delta: s.delta, omega })
}

/// Dressed transition frequencies, energies and states of the four-state
/// model on `{|g,0>, |g,1>, |e,0>, |e,1>}`, in units of `omega_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourStateSpectrum {
    /// `nu_+ = sqrt((omega_t + Omega)^2 + eta^2 omega_r^2)`
    pub nu_plus: f64,
    /// `nu_- = sqrt((omega_t - Omega)^2 + eta^2 omega_r^2)`
    pub nu_minus: f64,
    eta: f64,
    omega_r: f64,
    delta: f64,
    omega: f64,
}

impl FourStateSpectrum {
    fn nu(&self, s_prime: i8) -> f64 {
        if s_prime > 0 {
            self.nu_plus
        } else {
            self.nu_minus
        }
    }

    /// `e_{s,s'} = omega_t + s nu_{s'} / 2`.
    pub fn energy(&self, s: i8, s_prime: i8) -> f64 {
        1.0 + 0.5 * s as f64 * self.nu(s_prime)
    }

    /// Normalised amplitudes of `|e_{s,s'}>` over `(|g,0>, |g,1>, |e,0>, |e,1>)`.
    ///
    /// `None` at `eta = 0`, where the printed form degenerates to the zero
    /// vector for half of the states.
    pub fn state(&self, s: i8, s_prime: i8) -> Option<[Complex64; 4]> {
        if self.eta == 0.0 {
            return None;
        }
        let sp = s_prime as f64;
        let a = 1.0 + sp * self.omega - s as f64 * self.nu(s_prime);
        let d = sp * self.omega - self.delta;
        let raw = [
            Complex64::new(0.0, a / self.omega_r),
            Complex64::new(self.eta * self.omega_r / d, 0.0),
            Complex64::new(0.0, -a / d),
            Complex64::new(self.eta, 0.0),
        ];
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Some(raw.map(|z| z / norm))
    }
}

/// Exact solution of the four-state model from `|g,0>` and its limits.
#[derive(Debug, Clone, PartialEq)]
pub struct FourStateModel {
    pub spectrum: FourStateSpectrum,
    /// `P_{e,0}` after the pulse.
    pub p_e0: f64,
    /// `P_{e,1}` after the pulse.
    pub p_e1: f64,
    tau: f64,
}

pub(crate) fn four_state_scaled<T: Analytic>(eta: f64, wr: f64, delta: T, tau: f64) -> [T; 2] {
    let w = (delta * delta + wr * wr).sqrt();
    let ew2 = eta * eta * wr * wr;
    let nu_p = ((w + 1.0).square() + ew2).sqrt();
    let nu_m = ((T::lift(1.0) - w).square() + ew2).sqrt();
    let (cp, sp) = ((nu_p * (0.5 * tau)).cos(), (nu_p * (0.5 * tau)).sin());
    let (cm, sm) = ((nu_m * (0.5 * tau)).cos(), (nu_m * (0.5 * tau)).sin());
    let amp = (T::lift(wr) / (w * 2.0)).square();
    let p0 = amp * ((cp - cm).square() + ((w + 1.0) / nu_p * sp - (T::lift(1.0) - w) / nu_m * sm).square());
    let p1 = amp * ((w - delta) / nu_p * sp + (w + delta) / nu_m * sm).square() * (eta * eta);
    [p0, p1]
}

impl FourStateModel {
    fn scaled(&self) -> (f64, f64, f64, f64) {
        let s = &self.spectrum;
        (s.eta, s.omega_r, s.delta, s.omega)
    }

    /// Leading-order expansions in `eta`:
    ///
    /// `P_e0 ~ (omega_r/Omega)^2 [sin^2(x) - x eta^2 alpha^2 sin(x) cos(x)]`,
    /// `x = Omega tau / 2`, and
    /// `P_e1 ~ (eta omega_r / 2 Omega)^2 [A_+ sin((omega_t + Omega) tau/2) + A_- sin((omega_t - Omega) tau/2)]^2`
    /// with `A_+- = (Omega -+ Delta)/(omega_t +- Omega)`.
    ///
    /// The printed form of `P_e0` multiplies `sin^2 x` by a bracket holding
    /// `cot x`; that singularity is removable and is cancelled here, so the
    /// expansion is finite at `Omega tau = 2 pi k`.
    pub fn expanded(&self) -> (f64, f64) {
        let (eta, wr, delta, w) = self.scaled();
        let t = self.tau;
        let x = 0.5 * w * t;
        let p0 = (wr / w).powi(2) * (x.sin().powi(2) - x * eta * eta * wr * wr * x.sin() * x.cos());
        let (ap, am) = ((w - delta) / (1.0 + w), (w + delta) / (1.0 - w));
        let p1 = (eta * wr / (2.0 * w)).powi(2)
            * (ap * (0.5 * (1.0 + w) * t).sin() + am * (0.5 * (1.0 - w) * t).sin()).powi(2);
        (p0, p1)
    }

    /// The pi-pulse forms (`tau = pi / omega_r`):
    /// `P_e0 ~ (omega_r/Omega)^2` and
    /// `P_e1 ~ (eta omega_r / 2 Omega)^2 (A_+ - A_-)^2 cos^2(omega_t tau_pi / 2)`.
    pub fn pi_pulse(&self) -> (f64, f64) {
        let (eta, wr, delta, w) = self.scaled();
        let (ap, am) = ((w - delta) / (1.0 + w), (w + delta) / (1.0 - w));
        let c = (0.5 * PI / wr).cos();
        ((wr / w).powi(2), (eta * wr / (2.0 * w)).powi(2) * (ap - am).powi(2) * c * c)
    }

    /// The pi-pulse forms near resonance:
    /// `P_e0 ~ 1 - Delta^2/omega_r^2`,
    /// `P_e1 ~ eta^2 (alpha^4 + 2 alpha^2 Delta/omega_t + Delta^2/omega_t^2) cos^2(omega_t tau_pi / 2)`.
    pub fn pi_pulse_near_resonance(&self) -> (f64, f64) {
        let (eta, wr, delta, _) = self.scaled();
        let c = (0.5 * PI / wr).cos();
        (
            1.0 - delta * delta / (wr * wr),
            eta * eta * (wr.powi(4) + 2.0 * wr * wr * delta + delta * delta) * c * c,
        )
    }
}

/// `P_{e,1} ~ sin^2(eta omega_r t / 2) / 4` at the Rabi resonance
/// `omega_r = omega_t`, `Delta = 0`.
pub fn rabi_resonance_limit(params: &PhysicalParams, t: f64) -> f64 {
    0.25 * (0.5 * params.eta() * params.omega_r() * t).sin().powi(2)
}

/// Solves the four-state model for a pulse of length `tau` (seconds) from
/// `|g,0>`. Regular at the Rabi resonance as long as `eta > 0`.
pub fn four_state_model(params: &PhysicalParams, tau: f64) -> Result<FourStateModel> {
    let s = params.scaled();
    if !(s.omega_r > 0.0) {
        return Err(Error::InvalidParams("the four-state model needs omega_r > 0".into()));
    }
    let omega = s.omega_eff();
    let ew = s.eta * s.omega_r;
    let nu_plus = (1.0 + omega).hypot(ew);
    let nu_minus = (1.0 - omega).hypot(ew);
    if nu_minus == 0.0 {
        return Err(Error::Domain("nu_- vanishes: Rabi resonance with eta = 0".into()));
    }
    let t = params.scaled_time(tau);
    let [p_e0, p_e1] = four_state_scaled(s.eta, s.omega_r, s.delta, t);
    let spectrum = FourStateSpectrum { nu_plus, nu_minus, eta: s.eta, omega_r: s.omega_r, delta: s.delta, omega };
    Ok(FourStateModel { spectrum, p_e0, p_e1, tau: t })
}
