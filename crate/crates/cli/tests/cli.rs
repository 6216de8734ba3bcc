use std::path::Path;
use std::process::{Command, Output};

fn ldshift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldshift")).args(args).output().expect("binary runs")
}

fn run_to(path: &Path, args: &[&str]) -> String {
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    all.extend(["--out", p]);
    let out = ldshift(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(path).unwrap()
}

fn parse(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

// eta = 0.25, n0 = 2, pi pulse, Delta within three trap frequencies
const FIG1: [&str; 12] = [
    "spectrum", "--eta", "0.25", "--omega-t-hz", "1e6", "--omega-r-hz", "5e4", "--n0", "2", "--grid",
    "-3e6:3e6:241", "--pulse=pi",
];

#[test]
fn spectrum_round_trip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_to(&dir.path().join("a.csv"), &FIG1);
    let b = run_to(&dir.path().join("b.csv"), &FIG1);
    assert_eq!(a, b);
    assert!(!a.contains('\r'));
    let (header, rows) = parse(&a);
    assert_eq!(
        header,
        ["delta_over_2pi_hz", "p_e_total", "p_e_red", "p_e_carrier", "p_e_blue", "p_e_other"]
    );
    assert_eq!(rows.len(), 241);
    for row in &rows {
        for field in row {
            // 17 significant digits: d.dddddddddddddddde±x
            let mantissa = field.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.len(), 18, "{field}");
            assert_eq!(format!("{:.16e}", num(field)), *field);
        }
        let v: Vec<f64> = row.iter().map(|f| num(f)).collect();
        let recomputed = v[2] + v[3] + v[4] + v[5];
        assert!((recomputed - v[1]).abs() <= 4.0 * f64::EPSILON, "{} vs {}", recomputed, v[1]);
        assert!(v[1] >= -1e-12 && v[1] <= 1.0 + 1e-12);
    }
    // sidebands at +-omega_t and +-2 omega_t show up off the carrier
    let at = |hz: f64| rows.iter().find(|r| (num(&r[0]) - hz).abs() < 1.0).map(|r| num(&r[1])).unwrap();
    for hz in [-2e6, -1e6, 1e6, 2e6] {
        assert!(at(hz) > 3.0 * at(hz - 7.5e4).max(at(hz + 7.5e4)), "{hz}");
    }
    assert!(at(0.0) > 0.5);
}

#[test]
fn stdout_matches_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = run_to(&dir.path().join("s.csv"), &FIG1);
    let out = ldshift(&FIG1);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), file);
}

#[test]
fn ramsey_spectrum_runs() {
    let out = ldshift(&[
        "spectrum", "--eta", "0.25", "--omega-t-hz", "1e6", "--omega-r-hz", "1e5", "--n0", "2", "--ramsey-t",
        "multiple:2", "--grid", "-2e5:2e5:81",
    ]);
    assert!(out.status.success());
    let (_, rows) = parse(std::str::from_utf8(&out.stdout).unwrap());
    let centre = num(&rows[40][1]);
    let side = num(&rows[44][1]);
    assert!(centre > 0.5 && side < centre);
}

#[test]
fn zero_eta_shift_is_zero() {
    let out = ldshift(&[
        "shift", "--eta", "0", "--omega-t-hz", "1e4", "--omega-r-hz", "100", "--sweep", "tau-pi", "--grid",
        "0.2:1.8:9",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(header[0], "tau_s");
    assert_eq!(header.len(), 6);
    for row in rows {
        for col in [1, 2, 3, 4, 5] {
            assert_eq!(num(&row[col]), 0.0, "{row:?}");
        }
    }
}

#[test]
fn ramsey_shift_sweep_over_rabi_frequency() {
    let out = ldshift(&[
        "shift", "--eta", "0.04", "--omega-t-hz", "2e6", "--sweep", "omega-r", "--ramsey-t", "multiple:5",
        "--grid", "1e4:1e5:4",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(header, ["omega_r_over_2pi_hz", "delta_numeric_hz", "delta_analytic_hz", "bound_upper_hz", "bound_lower_hz"]);
    for row in rows {
        let (n, a, hi, lo) = (num(&row[1]), num(&row[2]), num(&row[3]), num(&row[4]));
        assert!(lo <= a && a <= hi);
        assert!(n.is_finite() && (n - a).abs() < 0.2 * a.abs().max(1e-300), "{row:?}");
    }
}

#[test]
fn fidelity_columns() {
    let out = ldshift(&["fidelity", "--etas", "0,0.1", "--grid", "0.05:0.5:46"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(header, ["alpha", "fidelity_eta_0", "fidelity_eta_0.1", "marker"]);
    let markers: Vec<f64> = rows.iter().filter(|r| !r[3].is_empty()).map(|r| num(&r[3])).collect();
    assert_eq!(markers, [1.0 / 17.0, 1.0 / 13.0, 1.0 / 9.0, 0.2]);
    for row in &rows {
        assert!((num(&row[1]) - 1.0).abs() < 1e-14);
        assert!(num(&row[2]) < 1.0);
    }
}

#[test]
fn tables() {
    for which in ["clock", "logic", "ramsey-sr"] {
        let out = ldshift(&["table", which]);
        assert!(out.status.success());
        let (header, rows) = parse(std::str::from_utf8(&out.stdout).unwrap());
        assert_eq!(header.len(), 14);
        assert!(!rows.is_empty());
    }
    let out = ldshift(&["table", "clock"]);
    let (_, rows) = parse(std::str::from_utf8(&out.stdout).unwrap());
    let ca = &rows[0];
    assert!(ca[0].starts_with("40Ca+"));
    let eta = num(&ca[6]);
    assert!((0.086..=0.105).contains(&eta));
    // a heavier mass override lowers eta
    let out = ldshift(&["table", "clock", "--mass-u", "160"]);
    let (_, rows) = parse(std::str::from_utf8(&out.stdout).unwrap());
    assert!((num(&rows[0][6]) - eta / 2.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_with_field_name() {
    let out = ldshift(&["spectrum", "--grid", "-1:1:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("eta"));
    let out = ldshift(&["spectrum", "--eta", "0.1", "--mass-u", "40", "--grid", "-1:1:3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ldshift(&["spectrum", "--eta", "0.1", "--grid", "1:0:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid"));
}
