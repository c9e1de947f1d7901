use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vacuum-leap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_records(args: &[&str]) -> Vec<Value> {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert!(out.status.success(), "{}", stderr(&out));
    stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn value_of(records: &[Value], quantity: &str) -> f64 {
    records
        .iter()
        .find(|r| r["quantity"] == quantity)
        .unwrap_or_else(|| panic!("no `{quantity}`"))["value"]
        .as_f64()
        .unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    for flag in ["--help", "--version"] {
        let out = run(&[flag]);
        assert_eq!(out.status.code(), Some(0));
        assert!(!stdout(&out).is_empty());
    }
    assert_eq!(run(&["simulate", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one_and_name_the_token() {
    let out = run(&["mu0", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--frobnicate"));

    let out = run(&["warp-drive"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("warp-drive"));

    let out = run(&["speed", "--photon-energy", "3 parsecs"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["band", "--e1", "50GeV", "--e2", "1GeV"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "temperature_gev = 100\nwarp_factor = 9").unwrap();
    let out = run(&["--config", file.path().to_str().unwrap(), "mu0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("warp_factor"));
}

#[test]
fn numerical_failure_exits_two_and_names_the_integral() {
    let out = run(&["--rel-tol", "1e-300", "mu0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("1/mu0"), "{}", stderr(&out));
}

#[test]
fn mu0_defaults_in_json() {
    let records = json_records(&["mu0"]);
    let mu0 = value_of(&records, "mu0");
    assert!((5.0e-6..=6.2e-6).contains(&mu0), "{mu0}");
    for r in &records {
        assert!(!r["units"].as_str().unwrap().is_empty());
        assert_eq!(r["config_fingerprint"].as_str().unwrap().len(), 16);
        assert_eq!(r["provenance"], "analytic");
    }
}

#[test]
fn massless_dispersion() {
    let records = json_records(&["dispersion", "--masses", "zero"]);
    let k = value_of(&records, "sigma_per_sqrt_length");
    assert!((k / 1.98e-18 - 1.0).abs() < 5e-3, "{k}");
    assert_eq!(value_of(&records, "average_speed"), 299_792_458.0);
}

#[test]
fn csv_and_json_carry_identical_values() {
    let json = json_records(&["mu0", "--breakdown"]);
    let out = run(&["mu0", "--breakdown", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), json.len());
    for (row, rec) in rows.iter().zip(&json) {
        assert_eq!(row[0], *rec["quantity"].as_str().unwrap());
        assert_eq!(row[1].parse::<f64>().unwrap(), rec["value"].as_f64().unwrap());
        assert_eq!(row[2], *rec["units"].as_str().unwrap());
        assert_eq!(row[3], *rec["config_fingerprint"].as_str().unwrap());
    }
}

#[test]
fn flags_override_config_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# hot vacuum\ntemperature_gev = 100\ndegeneracy_multiplier = 4").unwrap();
    let path = file.path().to_str().unwrap();

    let out = run(&[
        "--config",
        path,
        "--temperature",
        "200",
        "--verbose",
        "mu0",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let echo = stderr(&out);
    assert!(echo.contains("temperature_gev = 200.0"), "{echo}");
    assert!(echo.contains("degeneracy_multiplier = 4.0"), "{echo}");

    let combined: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let direct = json_records(&["--temperature", "200", "--degeneracy", "4", "mu0"]);
    assert_eq!(combined, direct);
}

#[test]
fn planck_flag_sets_all_toggles_but_individual_flags_win() {
    let all = json_records(&["--planck", "hbar", "mu0"]);
    let mixed = json_records(&["--planck", "hbar", "--moment-planck", "h", "mu0"]);
    let ratio = value_of(&mixed, "inv_mu0") / value_of(&all, "inv_mu0");
    assert!((ratio / (4.0 * std::f64::consts::PI.powi(2)) - 1.0).abs() < 1e-12);
}

#[test]
fn simulate_is_byte_identical_across_runs() {
    let args = [
        "simulate", "--length", "1e-14m", "--seed", "7", "--chains", "20", "--format", "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let records: Vec<Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(value_of(&records, "chains"), 20.0);
    assert!(records.iter().any(|r| r["provenance"] == "monte-carlo"));
}

#[test]
fn simulate_extrapolates_to_target_length() {
    let records = json_records(&[
        "simulate",
        "--length",
        "1e-14",
        "--chains",
        "8",
        "--target-length",
        "4e-14",
    ]);
    let ratio = value_of(&records, "extrapolated_sigma") / value_of(&records, "empirical_sigma");
    assert!((ratio - 2.0).abs() < 1e-12);
}

#[test]
fn oversized_simulation_suggests_a_shorter_path() {
    let out = run(&["simulate", "--length", "1km", "--chains", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("reduce path_length_m"));
}

#[test]
fn cavity_defaults_give_a_femtosecond() {
    let records = json_records(&["cavity", "--length", "4km", "--reflections", "70", "--fwhm", "4fs"]);
    let sigma = value_of(&records, "predicted_sigma");
    assert!((0.9e-15..=1.1e-15).contains(&sigma));
    let fwhm = value_of(&records, "broadened_fwhm");
    assert!((fwhm - 4.6e-15).abs() <= 0.1e-15);
}

#[test]
fn sensitivity_table_rows() {
    let records = json_records(&["sensitivity", "--row", "mine:10fs:1km"]);
    assert!((value_of(&records, "astro.figure") / 1e-14 - 1.0).abs() < 1e-12);
    assert!((value_of(&records, "lab.figure") / 1e-17 - 1.0).abs() < 1e-12);
    assert!(records.iter().any(|r| r["quantity"] == "mine.figure_fs"));
    assert_eq!(value_of(&records, "astro_limit_low"), 0.2);
    assert_eq!(value_of(&records, "astro_limit_high"), 0.3);
}

#[test]
fn sweep_emits_one_row_per_point() {
    let records = json_records(&[
        "sweep",
        "--param",
        "degeneracy_multiplier",
        "--from",
        "1",
        "--to",
        "4",
        "--points",
        "4",
        "--observable",
        "inv-mu0",
    ]);
    assert_eq!(records.len(), 4);
    let values: Vec<f64> = records.iter().map(|r| r["value"].as_f64().unwrap()).collect();
    for (i, v) in values.iter().enumerate() {
        assert_eq!(records[i]["parameter"], "degeneracy_multiplier");
        assert_eq!(records[i]["parameter_value"].as_f64().unwrap(), (i + 1) as f64);
        assert!((v / values[0] - (i + 1) as f64).abs() < 1e-12);
    }

    let log = json_records(&[
        "sweep",
        "--param",
        "temperature_gev",
        "--from",
        "10",
        "--to",
        "1000",
        "--points",
        "3",
        "--log",
    ]);
    let xs: Vec<f64> = log.iter().map(|r| r["parameter_value"].as_f64().unwrap()).collect();
    assert!((xs[1] - 100.0).abs() < 1e-9);

    let out = run(&["sweep", "--param", "mass_mode", "--from", "0", "--to", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["sweep", "--param", "warp", "--from", "0", "--to", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn massless_speed_is_exactly_c() {
    let records = json_records(&["--masses", "zero", "speed", "--photon-energy", "200keV"]);
    assert_eq!(value_of(&records, "average_speed"), 299_792_458.0);
    assert_eq!(value_of(&records, "speed_excess"), 0.0);
}

#[test]
fn table_output_ends_with_fingerprint() {
    let out = run(&["dispersion"]);
    let text = stdout(&out);
    assert!(text.lines().last().unwrap().starts_with("config "));
    assert!(text.contains("sigma_per_sqrt_length"));
}
