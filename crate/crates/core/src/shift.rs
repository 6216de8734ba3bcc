//! Location of the carrier peak `dP_e/dDelta = 0` near resonance and
//! shift-versus-parameter curves.
//!
//! Two tiers are available. [`PeakMethod::GoldenSection`] maximises the
//! probability itself and cannot resolve shifts much below `1e-7 omega_r`
//! because the peak is quadratically flat. [`PeakMethod::DerivativeRoot`]
//! finds the zero of the exact slope (complex step for the closed forms,
//! differentiation of the matrix exponential for the numerical sources) and
//! resolves the `eta^2 alpha^3` pi-pulse regime.

use rayon::prelude::*;

use num_complex::Complex64;

use crate::analytic::{
    complex_step_derivative, four_state_scaled, rabi_shift, rabi_shift_bounds, ramsey_near_resonance_scaled,
    ramsey_shift, ramsey_shift_bounds, ramsey_shift_leading, sixstate_scaled, vrwa_couplings, vrwa_scaled,
    RABI_RESONANCE_GUARD,
};
use crate::basis::{BasisSpec, PhysicalParams, PulseSchedule, Scaled, Scheme};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianKind;
use crate::propagation::{final_state, scaled_probability_slope, Timing};
use crate::roots::{brent, golden_max};

/// Points of the coarse grid the peak search starts from.
pub const COARSE_POINTS: usize = 101;
/// Default final bracket width of the golden-section tier, relative to `omega_r`.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Root tolerance of the derivative tier, relative to `omega_r`.
pub const DERIVATIVE_TOLERANCE: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftSource {
    /// Propagation with the full Hamiltonian, single pulse.
    FullNumeric,
    /// Propagation with the Lamb-Dicke Hamiltonian, single pulse.
    LdNumeric,
    /// Six-state closed form.
    SixStateAnalytic,
    /// Four-state model from `|g,0>`.
    FourStateAnalytic,
    /// Propagation with the full Hamiltonian, Ramsey sequence.
    RamseyNumeric,
    /// Near-resonance closed form of the Ramsey sequence.
    RamseyAnalytic,
    /// Three independent two-level problems (vibrational RWA).
    VrwaAnalytic,
    /// A caller-supplied line shape.
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeakMethod {
    GoldenSection,
    DerivativeRoot,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftResult {
    /// Peak detuning, in the units of the line shape (rad/s for [`carrier_shift`]).
    pub delta: f64,
    /// Final bracket; for the derivative tier the coarse cell the root was found in.
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub source: ShiftSource,
    pub method: PeakMethod,
    /// `dP_e/dDelta` at `delta`.
    pub residual_derivative: f64,
    /// Set when the coarse grid showed two equal maxima and `delta` is their midpoint.
    pub symmetric: bool,
}

fn coarse_grid(bracket: (f64, f64), points: usize) -> Vec<f64> {
    let (lo, hi) = bracket;
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

enum Coarse {
    Single(usize),
    Symmetric(usize, usize),
}

fn coarse_maximum(xs: &[f64], ps: &[f64]) -> Result<Coarse> {
    let mut maxima = Vec::new();
    let mut i = 1;
    while i + 1 < ps.len() {
        if ps[i] > ps[i - 1] {
            // walk across a plateau of equal values
            let mut j = i;
            while j + 1 < ps.len() && ps[j + 1] == ps[i] {
                j += 1;
            }
            if j + 1 < ps.len() && ps[j + 1] < ps[i] {
                maxima.push((i + j) / 2);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    match maxima.as_slice() {
        [] => Err(Error::Bracketing { lo: xs[0], hi: xs[xs.len() - 1] }),
        [m] => Ok(Coarse::Single(*m)),
        [a, b] if ps[*a] == ps[*b] => Ok(Coarse::Symmetric(*a, *b)),
        _ => Err(Error::AmbiguousPeak { maxima: maxima.iter().map(|&m| xs[m]).collect() }),
    }
}

/// Step of the closing parabolic fit, relative to the coarse grid spacing.
const POLISH_STEP: f64 = 1e-3;

/// Maximises `p_of_delta` on `bracket`: coarse grid of [`COARSE_POINTS`]
/// points, then golden section on the two cells around the coarse maximum
/// until the bracket is narrower than `xtol`.
///
/// Close to the peak `p_of_delta` changes by less than its rounding error,
/// so golden section alone stalls at roughly `sqrt(eps)` of the line width.
/// The result is therefore finished with the vertex of the parabola through
/// three points spaced [`POLISH_STEP`] coarse cells apart, which is kept only
/// if it stays inside the coarse cells; the bracket is then the vertex plus
/// or minus that spacing. The reported residual is the central difference
/// across the same spacing.
pub fn locate_carrier_peak<F: Fn(f64) -> f64>(p_of_delta: F, bracket: (f64, f64), xtol: f64) -> Result<ShiftResult> {
    check_bracket(bracket, xtol)?;
    let xs = coarse_grid(bracket, COARSE_POINTS);
    let ps: Vec<f64> = xs.iter().map(|&x| p_of_delta(x)).collect();
    let spacing = xs[1] - xs[0];
    let h = POLISH_STEP * spacing;
    let (delta, cell, iterations, symmetric) = match coarse_maximum(&xs, &ps)? {
        Coarse::Symmetric(a, b) => (0.5 * (xs[a] + xs[b]), (xs[a], xs[b]), 0, true),
        Coarse::Single(i) => {
            let (x, cell, it) = golden_max(&p_of_delta, xs[i - 1], xs[i + 1], xtol, 500);
            let (pm, p0, pp) = (p_of_delta(x - h), p_of_delta(x), p_of_delta(x + h));
            let curvature = pm - 2.0 * p0 + pp;
            let vertex = x + 0.5 * h * (pm - pp) / curvature;
            if curvature < 0.0 && vertex > xs[i - 1] && vertex < xs[i + 1] {
                (vertex, (vertex - h, vertex + h), it, false)
            } else {
                (x, cell, it, false)
            }
        }
    };
    let residual_derivative = (p_of_delta(delta + h) - p_of_delta(delta - h)) / (2.0 * h);
    Ok(ShiftResult {
        delta,
        bracket: cell,
        iterations,
        source: ShiftSource::Custom,
        method: PeakMethod::GoldenSection,
        residual_derivative,
        symmetric,
    })
}

/// Finds the zero of `slope` in the two coarse cells around the maximum of
/// `p_of_delta`, by Brent's method to absolute tolerance `xtol`.
pub fn locate_peak_derivative<F, S>(p_of_delta: F, slope: S, bracket: (f64, f64), xtol: f64) -> Result<ShiftResult>
where
    F: Fn(f64) -> f64,
    S: Fn(f64) -> f64,
{
    check_bracket(bracket, xtol)?;
    let xs = coarse_grid(bracket, COARSE_POINTS);
    let ps: Vec<f64> = xs.iter().map(|&x| p_of_delta(x)).collect();
    let (lo, hi, centre, symmetric) = match coarse_maximum(&xs, &ps)? {
        Coarse::Single(i) => (xs[i - 1], xs[i + 1], xs[i], false),
        Coarse::Symmetric(a, b) => (xs[a], xs[b], 0.5 * (xs[a] + xs[b]), true),
    };
    let at_centre = slope(centre);
    let (delta, iterations) = if at_centre == 0.0 { (centre, 0) } else { brent(&slope, lo, hi, xtol, 300)? };
    Ok(ShiftResult {
        delta,
        bracket: (lo, hi),
        iterations,
        source: ShiftSource::Custom,
        method: PeakMethod::DerivativeRoot,
        residual_derivative: slope(delta),
        symmetric,
    })
}

fn check_bracket(bracket: (f64, f64), xtol: f64) -> Result<()> {
    if !(bracket.0 < bracket.1) || !bracket.0.is_finite() || !bracket.1.is_finite() {
        return Err(Error::Domain(format!("invalid bracket [{}, {}]", bracket.0, bracket.1)));
    }
    if !(xtol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {xtol}")));
    }
    Ok(())
}

/// Excited-state probability `P_e(Delta)` of one of the built-in sources,
/// in internal units (`Delta / omega_t`).
pub trait LineShape: Sync {
    fn probability(&self, delta: f64) -> f64;
    /// `dP_e/dDelta` in internal units.
    fn slope(&self, delta: f64) -> f64;
}

/// A built-in source bound to its parameters, basis and pulse timing.
#[derive(Debug, Clone)]
pub struct SourceLine {
    source: ShiftSource,
    s: Scaled,
    basis: BasisSpec,
    timing: Timing,
    couplings: Vec<(i64, f64)>,
}

impl SourceLine {
    pub fn new(source: ShiftSource, params: &PhysicalParams, basis: &BasisSpec, schedule: &PulseSchedule) -> Result<Self> {
        let s = params.scaled();
        let want = match source {
            ShiftSource::RamseyNumeric | ShiftSource::RamseyAnalytic => Scheme::Ramsey,
            ShiftSource::Custom => {
                return Err(Error::Domain("a custom source has no built-in line shape".into()));
            }
            _ => Scheme::Rabi,
        };
        if schedule.scheme() != want {
            return Err(Error::InvalidParams(format!("{source:?} needs a {want:?} schedule")));
        }
        let analytic = matches!(
            source,
            ShiftSource::SixStateAnalytic
                | ShiftSource::FourStateAnalytic
                | ShiftSource::RamseyAnalytic
                | ShiftSource::VrwaAnalytic
        );
        if analytic && !(s.omega_r > 0.0) {
            return Err(Error::InvalidParams("closed forms need omega_r > 0".into()));
        }
        if source == ShiftSource::SixStateAnalytic && (s.omega_r - 1.0).abs() < 2.0 * RABI_RESONANCE_GUARD {
            return Err(Error::RabiResonance { relative_gap: (s.omega_r - 1.0).abs() });
        }
        if source == ShiftSource::FourStateAnalytic && basis.n0() != 0 {
            return Err(Error::Domain("the four-state model starts from n0 = 0".into()));
        }
        let couplings = if source == ShiftSource::VrwaAnalytic {
            vrwa_couplings(s.eta, s.omega_r, basis.n0())
        } else {
            Vec::new()
        };
        Ok(SourceLine { source, s, basis: *basis, timing: Timing::new(params, schedule), couplings })
    }

    pub fn source(&self) -> ShiftSource {
        self.source
    }

    fn kind(&self) -> HamiltonianKind {
        match self.source {
            ShiftSource::LdNumeric => HamiltonianKind::LambDicke,
            _ => HamiltonianKind::Full,
        }
    }

    fn analytic<T: crate::analytic::Analytic>(&self, d: T) -> T {
        let Scaled { eta, omega_r: wr, .. } = self.s;
        let n0 = self.basis.n0();
        let tau = self.timing.tau;
        match self.source {
            ShiftSource::SixStateAnalytic => {
                let [r, c, b] = sixstate_scaled(eta, wr, d, n0, tau);
                r + c + b
            }
            ShiftSource::FourStateAnalytic => {
                let [a, b] = four_state_scaled(eta, wr, d, tau);
                a + b
            }
            ShiftSource::RamseyAnalytic => {
                let [r, c, b] = ramsey_near_resonance_scaled(eta, wr, d, n0, tau, self.timing.t_free.unwrap_or(0.0));
                r + c + b
            }
            ShiftSource::VrwaAnalytic => {
                let mut total = T::lift(0.0);
                for &(k, c) in &self.couplings {
                    total = total + vrwa_scaled(c, k, d, tau);
                }
                total
            }
            _ => unreachable!("numerical source"),
        }
    }

    fn is_numeric(&self) -> bool {
        matches!(self.source, ShiftSource::FullNumeric | ShiftSource::LdNumeric | ShiftSource::RamseyNumeric)
    }
}

impl LineShape for SourceLine {
    fn probability(&self, delta: f64) -> f64 {
        if self.is_numeric() {
            let psi = final_state(self.kind(), self.s.with_delta(delta), &self.basis, self.timing);
            (0..psi.len() / 2).map(|n| psi[2 * n + 1].norm_sqr()).sum()
        } else {
            self.analytic(delta)
        }
    }

    fn slope(&self, delta: f64) -> f64 {
        if self.is_numeric() {
            scaled_probability_slope(self.kind(), self.s.with_delta(delta), &self.basis, self.timing).1
        } else {
            complex_step_derivative(|z: Complex64| self.analytic(z), delta)
        }
    }
}

/// Default half-width of the search bracket in internal units: a quarter
/// of the Rabi frequency, narrowed for Ramsey sequences in proportion to
/// the central fringe width `~ omega_r / (2 + omega_r T)`.
fn default_half_width(s: Scaled, timing: Timing) -> f64 {
    let quarter = 0.25 * s.omega_r;
    match timing.t_free {
        None => quarter,
        Some(t) => quarter * 2.0 / (2.0 + s.omega_r * t),
    }
}

/// Carrier shift (rad/s) of a built-in source.
pub fn carrier_shift(
    source: ShiftSource,
    params: &PhysicalParams,
    basis: &BasisSpec,
    schedule: &PulseSchedule,
    method: PeakMethod,
) -> Result<ShiftResult> {
    if !(params.omega_r() > 0.0) {
        return Err(Error::InvalidParams("a carrier shift needs omega_r > 0".into()));
    }
    let line = SourceLine::new(source, params, basis, schedule)?;
    let half = default_half_width(line.s, line.timing);
    let wr = line.s.omega_r;
    let bracket = (-half, half);
    let found = match method {
        PeakMethod::GoldenSection => {
            locate_carrier_peak(|d| line.probability(d), bracket, DEFAULT_TOLERANCE * wr)?
        }
        PeakMethod::DerivativeRoot => locate_peak_derivative(
            |d| line.probability(d),
            |d| line.slope(d),
            bracket,
            DERIVATIVE_TOLERANCE * wr,
        )?,
    };
    let wt = params.omega_t();
    Ok(ShiftResult {
        delta: found.delta * wt,
        bracket: (found.bracket.0 * wt, found.bracket.1 * wt),
        residual_derivative: found.residual_derivative / wt,
        source,
        ..found
    })
}

/// One point of a single-pulse shift curve; shifts in rad/s.
#[derive(Debug, Clone, PartialEq)]
pub struct RabiCurvePoint {
    pub tau: f64,
    pub numeric: Result<ShiftResult>,
    /// Leading-order closed form; `None` at a pole of the shift function.
    pub analytic: Option<f64>,
    pub bounds: Option<(f64, f64)>,
    /// Shift of the vibrational-RWA line shape.
    pub vrwa: Option<f64>,
}

/// Shift after single pulses of the durations in `tau_grid` (seconds),
/// evaluated in parallel and returned in grid order.
pub fn shift_curve_rabi(
    params: &PhysicalParams,
    basis: &BasisSpec,
    tau_grid: &[f64],
    source: ShiftSource,
    method: PeakMethod,
) -> Vec<RabiCurvePoint> {
    tau_grid
        .par_iter()
        .map(|&tau| {
            let schedule = PulseSchedule::rabi(tau);
            let numeric = schedule.clone().and_then(|s| carrier_shift(source, params, basis, &s, method));
            let vrwa = schedule
                .and_then(|s| carrier_shift(ShiftSource::VrwaAnalytic, params, basis, &s, method))
                .ok()
                .map(|r| r.delta);
            RabiCurvePoint {
                tau,
                numeric,
                analytic: rabi_shift(params, tau).ok(),
                bounds: rabi_shift_bounds(params, tau).ok(),
                vrwa,
            }
        })
        .collect()
}

/// Abscissa of a Ramsey shift curve.
#[derive(Debug, Clone, PartialEq)]
pub enum RamseySweep {
    /// Free evolution times in seconds at the Rabi frequency of `params`.
    FreeTime(Vec<f64>),
    /// Rabi frequencies in rad/s with `T = t_free_multiple * tau_{pi/2}`.
    RabiFrequency { values: Vec<f64>, t_free_multiple: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamseyCurvePoint {
    /// Free time (s) or Rabi frequency (rad/s), depending on the sweep.
    pub x: f64,
    pub t_free: f64,
    pub tau: f64,
    pub numeric: Result<ShiftResult>,
    pub analytic: f64,
    pub leading: f64,
    pub bounds: (f64, f64),
}

/// Ramsey shift curve with two resonant pi/2 pulses; shifts in rad/s.
pub fn shift_curve_ramsey(
    params: &PhysicalParams,
    basis: &BasisSpec,
    sweep: &RamseySweep,
    source: ShiftSource,
    method: PeakMethod,
) -> Vec<RamseyCurvePoint> {
    let points: Vec<(f64, Result<PhysicalParams>, Option<f64>)> = match sweep {
        RamseySweep::FreeTime(ts) => ts.iter().map(|&t| (t, Ok(*params), Some(t))).collect(),
        RamseySweep::RabiFrequency { values, .. } => {
            values.iter().map(|&w| (w, params.with_omega_r(w), None)).collect()
        }
    };
    points
        .into_par_iter()
        .map(|(x, p, t_fixed)| {
            let p = p.unwrap_or(*params);
            let tau = p.tau_pi_half();
            let t_free = match (t_fixed, sweep) {
                (Some(t), _) => t,
                (None, RamseySweep::RabiFrequency { t_free_multiple, .. }) => t_free_multiple * tau,
                (None, RamseySweep::FreeTime(_)) => unreachable!(),
            };
            let numeric = PulseSchedule::ramsey(tau, t_free)
                .and_then(|s| carrier_shift(source, &p, basis, &s, method));
            RamseyCurvePoint {
                x,
                t_free,
                tau,
                numeric,
                analytic: ramsey_shift(&p, tau, t_free),
                leading: ramsey_shift_leading(&p, tau, t_free),
                bounds: ramsey_shift_bounds(&p, t_free),
            }
        })
        .collect()
}

/// Runs the full-numeric shift for every `n0` (default truncation above
/// each) and returns the largest pairwise relative deviation
/// `|a - b| / max(|a|, |b|)`; zero when all shifts vanish or only one
/// `n0` is given.
pub fn n0_independence_check(
    params: &PhysicalParams,
    schedule: &PulseSchedule,
    n0_list: &[usize],
    method: PeakMethod,
) -> Result<f64> {
    let source = match schedule.scheme() {
        Scheme::Rabi => ShiftSource::FullNumeric,
        Scheme::Ramsey => ShiftSource::RamseyNumeric,
    };
    let shifts: Vec<f64> = n0_list
        .par_iter()
        .map(|&n0| {
            let basis = BasisSpec::with_default_truncation(n0);
            if params.eta() == 0.0 {
                return Ok(0.0);
            }
            carrier_shift(source, params, &basis, schedule, method).map(|r| r.delta)
        })
        .collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for (i, a) in shifts.iter().enumerate() {
        for b in &shifts[i + 1..] {
            let scale = a.abs().max(b.abs());
            if scale > 0.0 {
                worst = worst.max((a - b).abs() / scale);
            }
        }
    }
    Ok(worst)
}
