use std::f64::consts::PI;

use ldshift::analytic::{ramsey_shift, ramsey_shift_full};
use ldshift::hamiltonian::energy_levels;
use ldshift::propagation::{certify_truncation, spectrum, spectrum_point};
use ldshift::shift::{carrier_shift, locate_carrier_peak, shift_curve_ramsey, LineShape, PeakMethod, RamseySweep, SourceLine};
use ldshift::{BasisSpec, HamiltonianKind, PhysicalParams, PulseSchedule, ShiftSource};

const TWO_PI: f64 = 2.0 * PI;

fn params(eta: f64, alpha: f64) -> PhysicalParams {
    let wt = TWO_PI * 1e6;
    PhysicalParams::new(eta, wt, alpha * wt, 0.0).unwrap()
}

#[test]
fn uncoupled_motion_gives_two_level_dressed_energies() {
    let p = params(0.0, 0.3);
    let b = BasisSpec::with_default_truncation(0);
    let grid: Vec<f64> = (-10..=10).map(|k| 0.1 * k as f64 * p.omega_t()).collect();
    for (d, levels) in grid.iter().zip(energy_levels(&p, &b, &grid)) {
        let half = 0.5 * (0.09f64 + (d / p.omega_t()).powi(2)).sqrt();
        let mut expected: Vec<f64> = (0..b.levels()).flat_map(|n| [n as f64 + 0.5 - half, n as f64 + 0.5 + half]).collect();
        expected.sort_by(f64::total_cmp);
        for (a, e) in levels.iter().zip(&expected) {
            assert!((a - e).abs() < 1e-12, "{a} vs {e}");
        }
    }
}

#[test]
fn default_truncation_is_certified_for_a_strongly_coupled_spectrum() {
    // eta = 0.25 from |g,2>, pi pulse, three trap frequencies either side
    let p = params(0.25, 0.05);
    let b = BasisSpec::with_default_truncation(2);
    let s = PulseSchedule::rabi(p.tau_pi()).unwrap();
    let grid: Vec<f64> = (-30..=30).map(|k| 0.1 * k as f64 * p.omega_t()).collect();
    let change = certify_truncation(HamiltonianKind::Full, &p, &b, &s, &grid).unwrap();
    assert!(change < 1e-10, "{change:e}");
}

#[test]
fn sampled_spectrum_and_shift_search_agree() {
    // the peak found from the public propagation entry points is the one
    // carrier_shift reports
    let p = params(0.25, 0.1);
    let b = BasisSpec::with_default_truncation(0);
    let s = PulseSchedule::rabi(0.6 * p.tau_pi()).unwrap();
    let half = 0.25 * p.omega_r();
    let peak = locate_carrier_peak(
        |d| spectrum_point(HamiltonianKind::Full, &p.with_delta(d), &b, &s).p_e_total(),
        (-half, half),
        1e-9 * p.omega_r(),
    )
    .unwrap();
    let golden = carrier_shift(ShiftSource::FullNumeric, &p, &b, &s, PeakMethod::GoldenSection).unwrap();
    let root = carrier_shift(ShiftSource::FullNumeric, &p, &b, &s, PeakMethod::DerivativeRoot).unwrap();
    let scale = root.delta.abs();
    assert!(scale > 1e-4 * p.omega_r());
    assert!((peak.delta - root.delta).abs() < 1e-6 * scale, "{} {}", peak.delta, root.delta);
    assert!((golden.delta - root.delta).abs() < 1e-6 * scale, "{} {}", golden.delta, root.delta);
    // the grid values bracket the maximum
    let grid = [root.delta - 1e-3 * p.omega_r(), root.delta, root.delta + 1e-3 * p.omega_r()];
    let pts = spectrum(HamiltonianKind::Full, &p, &b, &s, &grid);
    assert!(pts[1].p_e_total() > pts[0].p_e_total() && pts[1].p_e_total() > pts[2].p_e_total());
}

#[test]
fn line_shape_slope_matches_probability() {
    let p = params(0.1, 0.05);
    let b = BasisSpec::with_default_truncation(1);
    let s = PulseSchedule::rabi(0.7 * p.tau_pi()).unwrap();
    for source in [ShiftSource::FullNumeric, ShiftSource::LdNumeric, ShiftSource::SixStateAnalytic, ShiftSource::VrwaAnalytic] {
        let line = SourceLine::new(source, &p, &b, &s).unwrap();
        for d in [-0.02, -0.003, 0.011] {
            let h = 1e-6;
            let fd = (line.probability(d + h) - line.probability(d - h)) / (2.0 * h);
            assert!((fd - line.slope(d)).abs() < 1e-6 * fd.abs().max(1.0), "{source:?} {d}: {fd} {}", line.slope(d));
        }
    }
}

#[test]
fn ramsey_shift_follows_closed_form_over_rabi_frequency() {
    // eta = 0.04, 2 MHz trap, T = 5 tau
    let wt = TWO_PI * 2e6;
    let p = PhysicalParams::new(0.04, wt, TWO_PI * 20e3, 0.0).unwrap();
    let b = BasisSpec::with_default_truncation(0);
    let values: Vec<f64> = [20e3, 35e3, 50e3, 80e3].iter().map(|hz| TWO_PI * hz).collect();
    let sweep = RamseySweep::RabiFrequency { values, t_free_multiple: 5.0 };
    for source in [ShiftSource::RamseyNumeric, ShiftSource::RamseyAnalytic] {
        for pt in shift_curve_ramsey(&p, &b, &sweep, source, PeakMethod::DerivativeRoot) {
            let q = p.with_omega_r(pt.x).unwrap();
            let full = ramsey_shift_full(&q, pt.tau, pt.t_free);
            let found = pt.numeric.unwrap().delta;
            let tol = if source == ShiftSource::RamseyAnalytic { 1e-6 } else { 0.1 };
            assert!((found - full).abs() < tol * full.abs(), "{source:?} {}: {found} vs {full}", pt.x);
            assert!((pt.analytic - ramsey_shift(&q, pt.tau, pt.t_free)).abs() == 0.0);
            assert!(pt.bounds.0 <= pt.leading && pt.leading <= pt.bounds.1);
        }
    }
}
