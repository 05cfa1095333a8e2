//! End-to-end checks of the command-line interface: output formats,
//! metadata echo, determinism, and exit codes.

use casimir::cli::main_with_args;
use casimir::lifshitz::ScreeningSpec;
use casimir::materials::DielectricModel;
use casimir::quad::QuadratureSpec;
use casimir::thermal::free_energy_t0;

fn run(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("casimir").chain(args.iter().copied()))
}

fn run_to_file(args: &[&str]) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out");
    let mut full: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap().to_string();
    full.push("--output");
    full.push(&path_str);
    let code = run(&full);
    let body = std::fs::read_to_string(&path).unwrap_or_default();
    (code, body)
}

#[test]
fn energy_csv_has_metadata_header_and_row() {
    let (code, body) = run_to_file(&[
        "energy",
        "--model",
        "drude",
        "--sigma",
        "4.5e7",
        "--screening",
        "off",
        "--d",
        "1e-6",
        "--T",
        "300",
    ]);
    assert_eq!(code, 0);
    assert!(body.starts_with("# command = energy\n"));
    assert!(body.contains("# constants = CODATA-2018\n"));
    assert!(body.contains("# model = drude\n"));
    assert!(body.contains("# rel_tol = "));
    let header = body
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("header row");
    assert_eq!(
        header,
        "d[m],T[K],free_energy[J/m^2],n_zero_te[J/m^2],n_zero_tm[J/m^2],n_used,\
         truncation_estimate[J/m^2],warn_validity"
    );
    let row = body.lines().last().unwrap();
    // the unscreened Drude n = 0 TE column is exactly zero
    let n_zero_te: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert_eq!(n_zero_te, 0.0);
}

#[test]
fn csv_bodies_are_byte_identical_across_runs() {
    let args = [
        "sweep",
        "--model",
        "semiconductor",
        "--eps-s",
        "16",
        "--carrier-density",
        "4.7e19",
        "--screening",
        "computed",
        "--d",
        "1e-6:4e-6:3log",
        "--T",
        "300",
    ];
    let (c1, b1) = run_to_file(&args);
    let (c2, b2) = run_to_file(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(b1, b2, "identical configurations must emit identical bytes");
    assert_eq!(b1.lines().filter(|l| !l.starts_with('#')).count(), 1 + 3);
}

#[test]
fn json_mirrors_csv_content() {
    let (code, body) = run_to_file(&["fig1", "--y", "10:30:3", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(doc["metadata"]["command"], "fig1");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["y"], 20.0);
    let factor = rows[1]["separation_correction_factor"].as_f64().unwrap();
    assert!((factor - 420.0 / 484.0).abs() < 1e-15);
}

#[test]
fn zero_temperature_routes_to_integral_form() {
    let (code, body) = run_to_file(&["energy", "--model", "perfect", "--d", "1e-6", "--T", "0"]);
    assert_eq!(code, 0);
    assert!(body.contains("# temperature_mode = zero-kelvin-integral\n"));
    let row = body.lines().last().unwrap();
    let total: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    let expected = free_energy_t0(
        1e-6,
        &DielectricModel::PerfectConductor,
        &ScreeningSpec::off(),
        &QuadratureSpec::default(),
    )
    .unwrap();
    assert_eq!(total, expected, "CSV must round-trip the f64 exactly");
}

#[test]
fn calibration_commands_accept_kt_mev() {
    let (code, body) = run_to_file(&[
        "calib-energy",
        "--V",
        "0.06",
        "--d",
        "1e-6",
        "--eps-s",
        "16",
        "--lambda",
        "0.8e-6",
        "--kT-meV",
        "30",
    ]);
    assert_eq!(code, 0);
    // k_B T = 30 meV corresponds to about 348 K
    let t_line = body
        .lines()
        .find(|l| l.starts_with("# T[K] = "))
        .expect("temperature metadata");
    let t: f64 = t_line.trim_start_matches("# T[K] = ").parse().unwrap();
    assert!(
        (t - 348.1).abs() < 0.1,
        "k_BT = 30 meV should map to ~348 K, got {t}"
    );
    let row = body.lines().last().unwrap();
    let y: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(y, 20.0);
}

#[test]
fn calib_force_warns_on_small_sphere() {
    let (code, body) = run_to_file(&[
        "calib-force",
        "--V",
        "0.1",
        "--d",
        "1e-6",
        "--eps-s",
        "16",
        "--lambda",
        "0.8e-6",
        "--T",
        "300",
        "--R",
        "5e-5",
    ]);
    assert_eq!(code, 0);
    let row = body.lines().last().unwrap();
    assert!(row.ends_with(",1"), "warn_radius flag expected in: {row}");
}

#[test]
fn validity_warning_appears_as_flag_column() {
    let (code, body) = run_to_file(&[
        "energy",
        "--model",
        "semiconductor",
        "--eps-s",
        "16",
        "--carrier-density",
        "4.7e19",
        "--screening",
        "fixed",
        "--lambda",
        "1e-6",
        "--vc",
        "1e5",
        "--d",
        "1e-6",
        "--T",
        "300",
    ]);
    assert_eq!(code, 0);
    assert!(body.contains("# validity_max_frequency[rad/s] = "));
    let row = body.lines().last().unwrap();
    assert!(row.ends_with(",1"), "warn_validity flag expected in: {row}");
}

#[test]
fn missing_required_model_flag_is_validation_error() {
    let code = run(&["energy", "--model", "drude", "--d", "1e-6", "--T", "300"]);
    assert_eq!(code, 2);
}

#[test]
fn malformed_range_is_validation_error() {
    let code = run(&["sweep", "--model", "perfect", "--d", "5:5:1", "--T", "300"]);
    assert_eq!(code, 2);
}

#[test]
fn two_ranges_rejected() {
    let code = run(&[
        "sweep",
        "--model",
        "perfect",
        "--d",
        "1e-6:1e-5:3",
        "--T",
        "100:300:3",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn numerical_failure_exits_3_with_error_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let code = run(&[
        "energy",
        "--model",
        "perfect",
        "--d",
        "1e-6",
        "--T",
        "300",
        "--quad-tol",
        "1e-15",
        "--quad-max-subdivisions",
        "1",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(
        body.contains("# error_kind = quadrature-non-convergence"),
        "machine-readable error record expected, got:\n{body}"
    );
}

#[test]
fn gapcheck_reports_reference_and_deviation() {
    let (code, body) = run_to_file(&[
        "gapcheck",
        "--model",
        "perfect",
        "--d",
        "1e-6",
        "--T",
        "600:37.5:5log",
    ]);
    assert_eq!(code, 0);
    assert!(body.contains("# reference_t0[J/m^2] = "));
    assert!(body.contains("# degenerate = false"));
    let rows: Vec<&str> = body.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 1 + 5);
}

#[test]
fn fig2_table_starts_at_unity() {
    let (code, body) = run_to_file(&["fig2", "--phi", "0:6:100"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = body
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(rows.len(), 100);
    let first: f64 = rows[0].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(first, 1.0);
}

#[test]
fn sweep_ratio_column_approaches_one_half() {
    let (code, body) = run_to_file(&[
        "sweep",
        "--model",
        "drude",
        "--sigma",
        "4.5e7",
        "--screening",
        "off",
        "--d",
        "1e-6:1e-5:20log",
        "--T",
        "300",
        "--ratio-vs",
        "perfect",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = body
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(rows.len(), 20);
    let header: Vec<&str> = body
        .lines()
        .find(|l| !l.starts_with('#'))
        .unwrap()
        .split(',')
        .collect();
    let ratio_col = header.iter().position(|h| *h == "pressure_ratio").unwrap();
    let last_ratio: f64 = rows[19].split(',').nth(ratio_col).unwrap().parse().unwrap();
    assert!(
        (last_ratio - 0.5).abs() < 0.01,
        "ratio at the largest separation should be near 1/2, got {last_ratio}"
    );
}

#[test]
fn entropy_command_emits_full_and_isolated_columns() {
    let (code, body) = run_to_file(&["entropy", "--model", "perfect", "--d", "1e-6", "--T", "300"]);
    assert_eq!(code, 0);
    let header = body.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(
        header,
        "d[m],T[K],entropy[J/(K m^2)],entropy_n_zero[J/(K m^2)]"
    );
    let row = body.lines().last().unwrap();
    let s: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    let s0: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert!(s > 0.0 && s0 > 0.0);
}
