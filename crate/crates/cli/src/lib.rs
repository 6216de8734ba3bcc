//! Command-line front end: spectra, shift curves, fidelity sweeps and
//! estimate tables written as CSV.
//!
//! Frequencies on the command line are linear (Hz) and are multiplied by
//! 2 pi once, when a [`RunConfig`] is turned into [`PhysicalParams`].
//! Every float is written with 17 significant digits so a file parses
//! back to the same doubles.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ldshift::analytic::{rabi_shift, rabi_shift_bounds};
use ldshift::basis::lamb_dicke_parameter_u;
use ldshift::ions::{self, Table, DEFAULT_REFERENCE_PULSE_AREA};
use ldshift::propagation::{fidelity_pi_half, spectrum};
use ldshift::shift::{carrier_shift, shift_curve_ramsey, PeakMethod, RamseySweep};
use ldshift::{BasisSpec, HamiltonianKind, PhysicalParams, PulseSchedule, ShiftSource};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid value for {field}: {message}")]
    Usage { field: &'static str, message: String },
    #[error(transparent)]
    Core(#[from] ldshift::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

fn usage(field: &'static str, message: impl Into<String>) -> CliError {
    CliError::Usage { field, message: message.into() }
}

/// Pulse length: `pi`, `pi2` or `seconds:<x>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseSpec {
    Pi,
    PiHalf,
    Seconds(f64),
}

impl PulseSpec {
    pub fn seconds(&self, params: &PhysicalParams) -> f64 {
        match *self {
            PulseSpec::Pi => params.tau_pi(),
            PulseSpec::PiHalf => params.tau_pi_half(),
            PulseSpec::Seconds(t) => t,
        }
    }
}

fn tagged_value(s: &str, tag: &str) -> Option<std::result::Result<f64, String>> {
    s.strip_prefix(tag)
        .and_then(|rest| rest.strip_prefix(':'))
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}")))
}

impl FromStr for PulseSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pi" => Ok(PulseSpec::Pi),
            "pi2" | "pi/2" => Ok(PulseSpec::PiHalf),
            _ => match tagged_value(s, "seconds") {
                Some(v) => v.map(PulseSpec::Seconds),
                None => Err(format!("expected pi, pi2 or seconds:<x>, got {s:?}")),
            },
        }
    }
}

/// Free evolution time: `seconds:<x>` or `multiple:<k>` for `T = k tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RamseyTime {
    Seconds(f64),
    Multiple(f64),
}

impl RamseyTime {
    pub fn seconds(&self, tau: f64) -> f64 {
        match *self {
            RamseyTime::Seconds(t) => t,
            RamseyTime::Multiple(k) => k * tau,
        }
    }
}

impl FromStr for RamseyTime {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(v) = tagged_value(s, "seconds") {
            return v.map(RamseyTime::Seconds);
        }
        if let Some(v) = tagged_value(s, "multiple") {
            return v.map(RamseyTime::Multiple);
        }
        Err(format!("expected seconds:<x> or multiple:<k>, got {s:?}"))
    }
}

/// Inclusive uniform grid `lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|i| if i + 1 == self.n { self.hi } else { self.lo + step * i as f64 }).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:n, got {s:?}"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let n: usize = parts[2].trim().parse().map_err(|e| format!("{:?}: {e}", parts[2]))?;
        if n == 0 || !lo.is_finite() || !hi.is_finite() || (n > 1 && !(hi > lo)) {
            return Err(format!("need finite lo < hi and n >= 1, got {s:?}"));
        }
        Ok(Grid { lo, hi, n })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.n)
    }
}

/// Ion and trap flags shared by the subcommands.
#[derive(Debug, Clone, Args)]
pub struct IonArgs {
    /// Lamb-Dicke parameter; alternatively give --mass-u and --wavelength-nm.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Ion mass in unified atomic mass units.
    #[arg(long)]
    pub mass_u: Option<f64>,
    /// Laser wavelength in nm.
    #[arg(long)]
    pub wavelength_nm: Option<f64>,
    /// Trap frequency omega_t / 2 pi in Hz.
    #[arg(long, default_value_t = 1e6)]
    pub omega_t_hz: f64,
    /// Rabi frequency omega_r / 2 pi in Hz.
    #[arg(long, default_value_t = 1e4)]
    pub omega_r_hz: f64,
    /// Initial vibrational level.
    #[arg(long, default_value_t = 0)]
    pub n0: usize,
    /// Highest vibrational level kept (default n0 + 8).
    #[arg(long)]
    pub n_max: Option<usize>,
}

/// Validated run parameters, still in linear units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub eta: f64,
    pub omega_t_hz: f64,
    pub omega_r_hz: f64,
    pub n0: usize,
    pub n_max: Option<usize>,
}

impl RunConfig {
    pub fn from_args(a: &IonArgs) -> Result<Self> {
        let eta = match (a.eta, a.mass_u, a.wavelength_nm) {
            (Some(eta), None, None) => eta,
            (None, Some(m), Some(w)) => lamb_dicke_parameter_u(m, w * 1e-9, 2.0 * PI * a.omega_t_hz)
                .map_err(|e| usage("mass-u/wavelength-nm", e.to_string()))?,
            (None, None, None) => return Err(usage("eta", "give --eta or both --mass-u and --wavelength-nm")),
            (Some(_), _, _) => return Err(usage("eta", "--eta excludes --mass-u and --wavelength-nm")),
            (None, _, _) => return Err(usage("mass-u/wavelength-nm", "both are needed to derive eta")),
        };
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(usage("eta", format!("must be finite and >= 0, got {eta}")));
        }
        if !(a.omega_t_hz > 0.0) || !a.omega_t_hz.is_finite() {
            return Err(usage("omega-t-hz", format!("must be > 0, got {}", a.omega_t_hz)));
        }
        if !(a.omega_r_hz >= 0.0) || !a.omega_r_hz.is_finite() {
            return Err(usage("omega-r-hz", format!("must be >= 0, got {}", a.omega_r_hz)));
        }
        Ok(RunConfig { eta, omega_t_hz: a.omega_t_hz, omega_r_hz: a.omega_r_hz, n0: a.n0, n_max: a.n_max })
    }

    /// The 2 pi boundary: Hz in, rad/s out.
    pub fn params(&self) -> Result<PhysicalParams> {
        Ok(PhysicalParams::new(self.eta, 2.0 * PI * self.omega_t_hz, 2.0 * PI * self.omega_r_hz, 0.0)?)
    }

    pub fn basis(&self) -> Result<BasisSpec> {
        match self.n_max {
            Some(n_max) => BasisSpec::new(n_max, self.n0).map_err(|e| usage("n-max", e.to_string())),
            None => Ok(BasisSpec::with_default_truncation(self.n0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Hamiltonian {
    Full,
    Ld,
}

impl From<Hamiltonian> for HamiltonianKind {
    fn from(h: Hamiltonian) -> Self {
        match h {
            Hamiltonian::Full => HamiltonianKind::Full,
            Hamiltonian::Ld => HamiltonianKind::LambDicke,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Golden,
    Derivative,
}

impl From<Method> for PeakMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Golden => PeakMethod::GoldenSection,
            Method::Derivative => PeakMethod::DerivativeRoot,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Full,
    Ld,
    SixState,
    FourState,
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    /// Pulse length in seconds (single pulse).
    Tau,
    /// Pulse length in units of tau_pi (single pulse); x is still written in seconds.
    TauPi,
    /// Free evolution time in seconds (Ramsey).
    TFree,
    /// Rabi frequency omega_r / 2 pi in Hz (Ramsey, needs --ramsey-t multiple:<k>).
    OmegaR,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    Clock,
    Logic,
    RamseySr,
}

impl From<TableArg> for Table {
    fn from(t: TableArg) -> Self {
        match t {
            TableArg::Clock => Table::Clock,
            TableArg::Logic => Table::Logic,
            TableArg::RamseySr => Table::RamseySr,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub ion: IonArgs,
    /// Pulse length (default pi, or pi2 with --ramsey-t).
    #[arg(long)]
    pub pulse: Option<PulseSpec>,
    /// Free evolution time; selects the Ramsey sequence.
    #[arg(long)]
    pub ramsey_t: Option<RamseyTime>,
    /// Detuning grid Delta / 2 pi in Hz.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value_t = Hamiltonian::Full)]
    pub hamiltonian: Hamiltonian,
}

#[derive(Debug, Clone, Args)]
pub struct ShiftArgs {
    #[command(flatten)]
    pub ion: IonArgs,
    /// What the grid runs over.
    #[arg(long, value_enum, default_value_t = Sweep::TauPi)]
    pub sweep: Sweep,
    #[arg(long)]
    pub grid: Grid,
    /// Free evolution time for the Rabi-frequency sweep.
    #[arg(long)]
    pub ramsey_t: Option<RamseyTime>,
    /// Line shape whose peak is located: full, ld, six-state or four-state
    /// for single pulses, full or analytic for Ramsey.
    #[arg(long, value_enum, default_value_t = Source::Full)]
    pub source: Source,
    #[arg(long, value_enum, default_value_t = Method::Derivative)]
    pub method: Method,
}

#[derive(Debug, Clone, Args)]
pub struct FidelityArgs {
    /// Comma-separated Lamb-Dicke parameters, one column each.
    #[arg(long, value_delimiter = ',', required = true)]
    pub etas: Vec<f64>,
    /// Grid of alpha = omega_r / omega_t.
    #[arg(long)]
    pub grid: Grid,
    #[arg(long, default_value_t = 1e6)]
    pub omega_t_hz: f64,
    #[arg(long, default_value_t = 0)]
    pub n0: usize,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub which: TableArg,
    /// Pulse area omega_r tau at which single-pulse envelopes are evaluated.
    #[arg(long, default_value_t = DEFAULT_REFERENCE_PULSE_AREA)]
    pub pulse_area: f64,
    /// Overrides the built-in mass of every row.
    #[arg(long)]
    pub mass_u: Option<f64>,
    /// Overrides the built-in wavelength of every row.
    #[arg(long)]
    pub wavelength_nm: Option<f64>,
    /// Overrides the built-in trap frequency of every row.
    #[arg(long)]
    pub omega_t_hz: Option<f64>,
}

#[derive(Debug, Parser)]
#[command(name = "ldshift", version, about = "Lamb-Dicke frequency shifts of trapped-ion carrier lines")]
pub struct Cli {
    /// Output file (default stdout).
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Excited-state probability against detuning.
    Spectrum(SpectrumArgs),
    /// Carrier shift against pulse length, free time or Rabi frequency.
    Shift(ShiftArgs),
    /// Fidelity of a pi/2 pulse against alpha.
    Fidelity(FidelityArgs),
    /// Order-of-magnitude shift estimates for reference ions.
    Table(TableArgs),
}

pub fn run(command: &Command) -> Result<String> {
    match command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Shift(a) => cmd_shift(a),
        Command::Fidelity(a) => cmd_fidelity(a),
        Command::Table(a) => cmd_table(a),
    }
}

/// Float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    fmt_f64(x.unwrap_or(f64::NAN))
}

struct Csv {
    writer: csv::Writer<Vec<u8>>,
}

impl Csv {
    fn new(header: &[&str]) -> Result<Self> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(Csv { writer })
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) -> Result<()> {
        self.writer.write_record(fields.into_iter().collect::<Vec<_>>())?;
        Ok(())
    }

    fn finish(self) -> Result<String> {
        let bytes = self.writer.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
    }
}

fn hz_to_rad(hz: f64) -> f64 {
    2.0 * PI * hz
}

fn rad_to_hz(w: f64) -> f64 {
    w / (2.0 * PI)
}

fn schedule_for(params: &PhysicalParams, pulse: Option<PulseSpec>, ramsey_t: Option<RamseyTime>) -> Result<PulseSchedule> {
    let schedule = match ramsey_t {
        None => PulseSchedule::rabi(pulse.unwrap_or(PulseSpec::Pi).seconds(params)),
        Some(t) => {
            let tau = pulse.unwrap_or(PulseSpec::PiHalf).seconds(params);
            PulseSchedule::ramsey(tau, t.seconds(tau))
        }
    };
    schedule.map_err(|e| usage("pulse", e.to_string()))
}

pub const SPECTRUM_HEADER: [&str; 6] =
    ["delta_over_2pi_hz", "p_e_total", "p_e_red", "p_e_carrier", "p_e_blue", "p_e_other"];

/// `p_e_other` is the excited population outside `n0 - 1 ..= n0 + 1`, so the
/// four partial columns add up to `p_e_total`.
pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<String> {
    let cfg = RunConfig::from_args(&a.ion)?;
    let params = cfg.params()?;
    let basis = cfg.basis()?;
    let schedule = schedule_for(&params, a.pulse, a.ramsey_t)?;
    let grid_hz = a.grid.values();
    let grid: Vec<f64> = grid_hz.iter().map(|&d| hz_to_rad(d)).collect();
    let points = spectrum(a.hamiltonian.into(), &params, &basis, &schedule, &grid);
    let mut out = Csv::new(&SPECTRUM_HEADER)?;
    for (hz, p) in grid_hz.iter().zip(&points) {
        let other = p.p_e_total() - p.three_level_sum();
        out.row([*hz, p.p_e_total(), p.red(), p.carrier(), p.blue(), other].map(fmt_f64))?;
    }
    out.finish()
}

fn rabi_source(s: Source) -> Result<ShiftSource> {
    match s {
        Source::Full => Ok(ShiftSource::FullNumeric),
        Source::Ld => Ok(ShiftSource::LdNumeric),
        Source::SixState => Ok(ShiftSource::SixStateAnalytic),
        Source::FourState => Ok(ShiftSource::FourStateAnalytic),
        Source::Analytic => Err(usage("source", "use six-state or four-state for single pulses")),
    }
}

fn ramsey_source(s: Source) -> Result<ShiftSource> {
    match s {
        Source::Full => Ok(ShiftSource::RamseyNumeric),
        Source::Analytic => Ok(ShiftSource::RamseyAnalytic),
        _ => Err(usage("source", "Ramsey shifts take full or analytic")),
    }
}

/// Shift curve. Failed peak searches (a pole of the closed form, no
/// interior maximum) are written as NaN rather than aborting the curve.
pub fn cmd_shift(a: &ShiftArgs) -> Result<String> {
    let cfg = RunConfig::from_args(&a.ion)?;
    let params = cfg.params()?;
    let basis = cfg.basis()?;
    let method: PeakMethod = a.method.into();
    let values = a.grid.values();
    match a.sweep {
        Sweep::Tau | Sweep::TauPi => {
            if a.ramsey_t.is_some() {
                return Err(usage("ramsey-t", "not used by single-pulse sweeps"));
            }
            let source = rabi_source(a.source)?;
            let scale = if a.sweep == Sweep::TauPi { params.tau_pi() } else { 1.0 };
            let taus: Vec<f64> = values.iter().map(|&x| x * scale).collect();
            rabi_shift_csv(&params, &basis, &taus, source, method)
        }
        Sweep::TFree | Sweep::OmegaR => {
            let source = ramsey_source(a.source)?;
            let sweep = match (a.sweep, a.ramsey_t) {
                (Sweep::TFree, None) => RamseySweep::FreeTime(values.clone()),
                (Sweep::TFree, Some(_)) => return Err(usage("ramsey-t", "the t-free sweep sets T from the grid")),
                (_, Some(RamseyTime::Multiple(k))) => RamseySweep::RabiFrequency {
                    values: values.iter().map(|&hz| hz_to_rad(hz)).collect(),
                    t_free_multiple: k,
                },
                _ => return Err(usage("ramsey-t", "the omega-r sweep needs multiple:<k>")),
            };
            let x_name = if a.sweep == Sweep::TFree { "t_free_s" } else { "omega_r_over_2pi_hz" };
            let mut out = Csv::new(&[x_name, "delta_numeric_hz", "delta_analytic_hz", "bound_upper_hz", "bound_lower_hz"])?;
            for (x, p) in values.iter().zip(shift_curve_ramsey(&params, &basis, &sweep, source, method)) {
                let numeric = p.numeric.ok().map(|r| rad_to_hz(r.delta));
                out.row([
                    fmt_f64(*x),
                    fmt_opt(numeric),
                    fmt_f64(rad_to_hz(p.analytic)),
                    fmt_f64(rad_to_hz(p.bounds.1)),
                    fmt_f64(rad_to_hz(p.bounds.0)),
                ])?;
            }
            out.finish()
        }
    }
}

fn rabi_shift_csv(
    params: &PhysicalParams,
    basis: &BasisSpec,
    taus: &[f64],
    source: ShiftSource,
    method: PeakMethod,
) -> Result<String> {
    let zero_shift = params.eta() == 0.0;
    let rows: Vec<[Option<f64>; 5]> = taus
        .par_iter()
        .map(|&tau| {
            let Ok(schedule) = PulseSchedule::rabi(tau) else { return [None; 5] };
            let shift = |src| carrier_shift(src, params, basis, &schedule, method).ok().map(|r| r.delta);
            let numeric = if zero_shift { Some(0.0) } else { shift(source) };
            let vrwa = if zero_shift { Some(0.0) } else { shift(ShiftSource::VrwaAnalytic) };
            let bounds = rabi_shift_bounds(params, tau).ok();
            [numeric, rabi_shift(params, tau).ok(), bounds.map(|b| b.1), bounds.map(|b| b.0), vrwa]
        })
        .collect();
    let mut out = Csv::new(&[
        "tau_s",
        "delta_numeric_hz",
        "delta_analytic_hz",
        "bound_upper_hz",
        "bound_lower_hz",
        "delta_vrwa_hz",
    ])?;
    for (tau, r) in taus.iter().zip(rows) {
        let mut fields = vec![fmt_f64(*tau)];
        fields.extend(r.iter().map(|v| fmt_opt(v.map(rad_to_hz))));
        out.row(fields)?;
    }
    out.finish()
}

/// `1/(4n+1)` values inside `[lo, hi]`, largest first.
pub fn fidelity_markers(lo: f64, hi: f64) -> Vec<f64> {
    (0..)
        .map(|n| 1.0 / (4 * n + 1) as f64)
        .take_while(|&a| a >= lo)
        .filter(|&a| a <= hi)
        .collect()
}

/// One fidelity column per `eta`; the marker column holds `1/(4n+1)` on
/// the grid row nearest to it and is empty elsewhere.
pub fn cmd_fidelity(a: &FidelityArgs) -> Result<String> {
    if a.etas.iter().any(|e| !(*e >= 0.0) || !e.is_finite()) {
        return Err(usage("etas", "every eta must be finite and >= 0"));
    }
    if !(a.grid.lo > 0.0) {
        return Err(usage("grid", "alpha must be > 0"));
    }
    if !(a.omega_t_hz > 0.0) || !a.omega_t_hz.is_finite() {
        return Err(usage("omega-t-hz", format!("must be > 0, got {}", a.omega_t_hz)));
    }
    let basis = match a.n_max {
        Some(n_max) => BasisSpec::new(n_max, a.n0).map_err(|e| usage("n-max", e.to_string()))?,
        None => BasisSpec::with_default_truncation(a.n0),
    };
    let wt = hz_to_rad(a.omega_t_hz);
    let alphas = a.grid.values();
    let cells: Vec<(usize, f64)> = (0..alphas.len()).flat_map(|i| a.etas.iter().map(move |&e| (i, e))).collect();
    let values = cells
        .par_iter()
        .map(|&(i, eta)| {
            let p = PhysicalParams::new(eta, wt, alphas[i] * wt, 0.0)?;
            fidelity_pi_half(&p, &basis)
        })
        .collect::<std::result::Result<Vec<f64>, _>>()?;
    let mut marker_row = vec![None; alphas.len()];
    for m in fidelity_markers(a.grid.lo, a.grid.hi) {
        let nearest = (0..alphas.len())
            .min_by(|&i, &j| (alphas[i] - m).abs().total_cmp(&(alphas[j] - m).abs()))
            .expect("grid is non-empty");
        marker_row[nearest] = Some(m);
    }
    let mut header = vec!["alpha".to_string()];
    header.extend(a.etas.iter().map(|e| format!("fidelity_eta_{e}")));
    header.push("marker".into());
    let mut out = Csv::new(&header.iter().map(String::as_str).collect::<Vec<_>>())?;
    let k = a.etas.len();
    for (i, alpha) in alphas.iter().enumerate() {
        let mut fields = vec![fmt_f64(*alpha)];
        fields.extend(values[i * k..(i + 1) * k].iter().map(|&f| fmt_f64(f)));
        fields.push(marker_row[i].map(fmt_f64).unwrap_or_default());
        out.row(fields)?;
    }
    out.finish()
}

pub const TABLE_HEADER: [&str; 14] = [
    "ion",
    "mass_u",
    "wavelength_nm",
    "trap_hz",
    "omega_r_lo_hz",
    "omega_r_hi_hz",
    "eta_derived",
    "eta_tabulated",
    "shift_lo_hz",
    "shift_hi_hz",
    "shift_lo_tabulated_eta_hz",
    "shift_hi_tabulated_eta_hz",
    "published_shift_lo_hz",
    "published_shift_hi_hz",
];

/// Estimates are computed with the derived and with the tabulated `eta`.
pub fn cmd_table(a: &TableArgs) -> Result<String> {
    if !(a.pulse_area > 0.0) {
        return Err(usage("pulse-area", "must be > 0"));
    }
    let which: Table = a.which.into();
    let mut out = Csv::new(&TABLE_HEADER)?;
    for base in ions::entries(which) {
        let mut e = *base;
        if let Some(m) = a.mass_u {
            e.mass_u = m;
        }
        if let Some(w) = a.wavelength_nm {
            e.wavelength_m = w * 1e-9;
        }
        if let Some(f) = a.omega_t_hz {
            e.trap_hz = f;
        }
        let eta = e.derived_eta()?;
        let (lo, hi) = ions::shift_estimate_hz(which, &e, eta, a.pulse_area)?;
        let (lo_t, hi_t) = ions::shift_estimate_hz(which, &e, e.tabulated_eta, a.pulse_area)?;
        let mut fields = vec![e.name.to_string()];
        fields.extend(
            [
                e.mass_u,
                e.wavelength_m * 1e9,
                e.trap_hz,
                e.omega_r_hz.0,
                e.omega_r_hz.1,
                eta,
                e.tabulated_eta,
                lo,
                hi,
                lo_t,
                hi_t,
                e.tabulated_shift_hz.0,
                e.tabulated_shift_hz.1,
            ]
            .map(fmt_f64),
        );
        out.row(fields)?;
    }
    out.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ion(eta: f64) -> IonArgs {
        IonArgs {
            eta: Some(eta),
            mass_u: None,
            wavelength_nm: None,
            omega_t_hz: 1e6,
            omega_r_hz: 1e4,
            n0: 0,
            n_max: None,
        }
    }

    #[test]
    fn pulse_and_time_specs_parse() {
        assert_eq!("pi".parse::<PulseSpec>().unwrap(), PulseSpec::Pi);
        assert_eq!("pi2".parse::<PulseSpec>().unwrap(), PulseSpec::PiHalf);
        assert_eq!("seconds:2.5e-3".parse::<PulseSpec>().unwrap(), PulseSpec::Seconds(2.5e-3));
        assert!("seconds:".parse::<PulseSpec>().is_err());
        assert!("pi3".parse::<PulseSpec>().is_err());
        assert_eq!("multiple:5".parse::<RamseyTime>().unwrap(), RamseyTime::Multiple(5.0));
        assert_eq!("seconds:1e-4".parse::<RamseyTime>().unwrap(), RamseyTime::Seconds(1e-4));
        assert!("multiple".parse::<RamseyTime>().is_err());
    }

    #[test]
    fn grid_parses_and_includes_ends() {
        let g: Grid = "-3e6:3e6:7".parse().unwrap();
        let v = g.values();
        assert_eq!(v.len(), 7);
        assert_eq!(v[0], -3e6);
        assert_eq!(v[3], 0.0);
        assert_eq!(v[6], 3e6);
        assert!("1:0:5".parse::<Grid>().is_err());
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert_eq!("0.3:0.3:1".parse::<Grid>().unwrap().values(), vec![0.3]);
    }

    #[test]
    fn eta_source_is_exclusive() {
        let mut a = ion(0.1);
        a.mass_u = Some(40.0);
        assert!(matches!(RunConfig::from_args(&a), Err(CliError::Usage { field: "eta", .. })));
        a.eta = None;
        assert!(matches!(RunConfig::from_args(&a), Err(CliError::Usage { field: "mass-u/wavelength-nm", .. })));
        a.wavelength_nm = Some(729.0);
        let cfg = RunConfig::from_args(&a).unwrap();
        // 40Ca+ at 729 nm in a 1 MHz trap
        // k = 8.619e6 /m, hbar k^2 / (2 m omega_t) = 9.386e-3
        assert!((cfg.eta - 0.09688).abs() < 5e-5, "{}", cfg.eta);
        let mut b = ion(0.1);
        b.eta = None;
        assert!(RunConfig::from_args(&b).is_err());
    }

    #[test]
    fn hz_boundary() {
        let cfg = RunConfig::from_args(&ion(0.1)).unwrap();
        let p = cfg.params().unwrap();
        assert_eq!(p.omega_t(), 2.0 * PI * 1e6);
        assert_eq!(p.omega_r(), 2.0 * PI * 1e4);
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn markers() {
        let m = fidelity_markers(0.05, 1.0);
        assert_eq!(m[0], 1.0);
        assert_eq!(m[1], 0.2);
        assert_eq!(m.len(), 5);
        assert!(fidelity_markers(0.3, 0.5).is_empty());
    }

    #[test]
    fn zero_eta_spectrum_is_symmetric() {
        let a = SpectrumArgs {
            ion: ion(0.0),
            pulse: None,
            ramsey_t: None,
            grid: "-3e4:3e4:61".parse().unwrap(),
            hamiltonian: Hamiltonian::Full,
        };
        let csv = cmd_spectrum(&a).unwrap();
        let rows: Vec<Vec<f64>> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
            .collect();
        for i in 0..rows.len() {
            let j = rows.len() - 1 - i;
            assert!((rows[i][1] - rows[j][1]).abs() < 1e-12);
            assert!(rows[i][2].abs() < 1e-15 && rows[i][4].abs() < 1e-15);
        }
        assert!((rows[30][1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn usage_errors_name_the_field() {
        let mut a = ShiftArgs {
            ion: ion(0.05),
            sweep: Sweep::OmegaR,
            grid: "1e3:2e3:3".parse().unwrap(),
            ramsey_t: None,
            source: Source::Full,
            method: Method::Derivative,
        };
        let err = cmd_shift(&a).unwrap_err();
        assert!(err.to_string().contains("ramsey-t"), "{err}");
        a.sweep = Sweep::TauPi;
        a.source = Source::Analytic;
        assert!(cmd_shift(&a).unwrap_err().to_string().contains("source"));
    }
}
