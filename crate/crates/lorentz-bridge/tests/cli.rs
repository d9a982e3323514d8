//! End-to-end tests of the command-line interface: output shapes, the
//! exit-code contract (0 ok / 1 verification failure / 2 usage / 3 domain),
//! config-file and environment-variable handling.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorentz-bridge"))
        .args(args)
        .env_remove("LORENTZ_BRIDGE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn boost_identity_is_exact() {
    let out = run(&["boost", "--vector", "1,0,0,0", "--beta", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1,0,0,0\n");
}

#[test]
fn boost_by_point_six_matches_the_oracle() {
    let out = run(&["boost", "--vector", "1,0,0,0", "--beta", "0.6"]);
    assert_eq!(stdout(&out), "1.25,-0.75,0,0\n");
}

#[test]
fn boost_along_other_axes() {
    let out = run(&["boost", "--vector", "1,0,0,0", "--beta", "0.6", "--axis", "y"]);
    assert_eq!(stdout(&out), "1.25,0,-0.75,0\n");
    let out = run(&["boost", "--vector", "2.5,1.5,0,0", "--beta", "0.8", "--axis", "z"]);
    assert_eq!(stdout(&out), "4.16667,1.5,0,-3.33333\n");
}

#[test]
fn boost_rejects_superluminal_frame_with_exit_3() {
    let out = run(&["boost", "--vector", "1,0,0,0", "--beta", "1.0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("--beta"), "message names the flag");
}

#[test]
fn boost_rejects_malformed_vector_with_exit_2() {
    let out = run(&["boost", "--vector", "1,0,0", "--beta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--vector"));

    let out = run(&["boost", "--vector", "1,0,0,oops", "--beta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_rejected_with_exit_2() {
    let out = run(&["boost", "--vector", "1,0,0,0", "--beta", "0", "--warp", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn boost_formats_json_with_17_digits() {
    let out = run(&[
        "boost", "--vector", "1,0,0,0", "--beta", "0.6", "--format", "json",
    ]);
    let text = stdout(&out);
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(parsed["t"].as_f64(), Some(1.25));
    assert!(text.contains("1.2500000000000000e0"), "{text}");
}

#[test]
fn boost_csv_has_header_row() {
    let out = run(&[
        "boost", "--vector", "1,0,0,0", "--beta", "0.6", "--format", "csv",
    ]);
    assert_eq!(stdout(&out), "t,x,y,z\n1.25,-0.75,0,0\n");
}

#[test]
fn precision_flag_overrides_significant_digits() {
    let out = run(&[
        "boost", "--vector", "1,0,0,0", "--beta", "0.3", "--precision", "12",
    ]);
    // gamma(0.3) = 1.048284836721918...
    assert_eq!(stdout(&out), "1.04828483672,-0.314485451017,0,0\n");
}

#[test]
fn wave_emits_one_row_per_derived_quantity() {
    let out = run(&["wave", "--omega", "2.5", "--k", "1.5,0,0"]);
    let text = stdout(&out);
    assert!(text.contains("omega0 2\n"), "{text}");
    assert!(text.contains("phase_velocity 1.66667\n"));
    assert!(text.contains("group_velocity 0.6\n"));
    assert!(text.contains("rest_velocity_x 0.6\n"));
    assert!(text.contains("wavelength 4.18879\n"));
}

#[test]
fn lightlike_wave_omits_the_rest_frame_rows() {
    let out = run(&["wave", "--omega", "1", "--k", "1,0,0"]);
    let text = stdout(&out);
    assert!(text.contains("omega0 0\n"));
    assert!(text.contains("phase_velocity 1\n"));
    assert!(text.contains("group_velocity 1\n"));
    assert!(!text.contains("rest_velocity"), "no rest-wave frame for light");
}

#[test]
fn wave_rejects_subluminal_phase_velocity_with_exit_3() {
    let out = run(&["wave", "--omega", "1", "--k", "2,0,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("|k| <= omega"),
        "message cites the v_p >= c constraint: {}",
        stderr(&out)
    );
}

#[test]
fn doppler_emits_rfc4180_shaped_csv() {
    let out = run(&["doppler", "--beta-range", "0.6"]);
    assert_eq!(stdout(&out), "beta,factor\n0.6,0.5\n");

    let out = run(&["doppler", "--beta-range", "0:0.6:0.3"]);
    let text = stdout(&out);
    assert_eq!(text, "beta,factor\n0,1\n0.3,0.733799\n0.6,0.5\n");
    assert!(text.ends_with('\n'));
    assert!(!text.contains(",\n"), "no trailing commas");
}

#[test]
fn doppler_rejects_range_crossing_the_light_speed() {
    let out = run(&["doppler", "--beta-range", "0.5:1.5:0.5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn dispersion_is_the_light_cone_at_zero_rest_frequency() {
    let out = run(&["dispersion", "--omega0", "0", "--k-max", "2", "--points", "4"]);
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], fields[1], "omega = k on every row: {line}");
    }
}

#[test]
fn dispersion_satisfies_the_reciprocal_velocity_identity() {
    // full precision: the identity is a property of the computed values,
    // not of their 6-digit renderings
    let out = run(&[
        "dispersion", "--omega0", "2", "--k-max", "3", "--points", "50",
        "--precision", "17",
    ]);
    let text = stdout(&out);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let (k, omega, v_p, v_g) = (fields[0], fields[1], fields[2], fields[3]);
        assert!((v_p * v_g - 1.0).abs() <= 1e-12, "row {line}");
        assert!((omega * omega - (4.0 + k * k)).abs() <= 1e-12 * omega * omega);
        assert!(k > 0.0);
        rows += 1;
    }
    assert_eq!(rows, 50);
    // the frozen spec row: omega0 = 2, k = 1.5 -> omega = 2.5
    let out = run(&["dispersion", "--omega0", "2", "--k-max", "1.5", "--points", "2"]);
    assert!(stdout(&out).contains("1.5,2.5,1.66667,0.6"));
}

#[test]
fn dispersion_validates_its_arguments() {
    assert_eq!(
        run(&["dispersion", "--omega0", "2", "--k-max", "0", "--points", "4"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["dispersion", "--omega0", "2", "--k-max", "1", "--points", "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["dispersion", "--omega0", "2", "--k-max", "nope", "--points", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn light_speed_flag_rescales_velocities() {
    // beta given as a velocity in m/s with c = 299792458
    let out = run(&[
        "--c", "299792458",
        "doppler", "--beta-range", "179875474.8",
    ]);
    // 179875474.8 / c = 0.6
    assert_eq!(stdout(&out), "beta,factor\n0.6,0.5\n");
}

#[test]
fn verify_passes_and_exits_zero() {
    let out = run(&[
        "verify", "--suite", "theorem-a", "--samples", "500", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout(&out)).expect("report is valid JSON");
    assert_eq!(parsed["overall_pass"].as_bool(), Some(true));
    assert_eq!(parsed["config"]["seed"].as_u64(), Some(7));
    assert_eq!(parsed["verdicts"][0]["suite_name"].as_str(), Some("theorem-a"));
}

#[test]
fn verify_reports_failure_with_exit_one_but_still_emits_the_report() {
    let out = run(&[
        "verify", "--suite", "theorem-a", "--samples", "50", "--perturb", "0.1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout(&out)).expect("report emitted despite failure");
    assert_eq!(parsed["overall_pass"].as_bool(), Some(false));
    assert!(parsed["verdicts"][0]["witness"].is_object(), "witness present");
}

#[test]
fn verify_rejects_bad_flags_with_exit_2() {
    let out = run(&["verify", "--suite", "theorem-c"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--samples", "not-a-number"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_unphysical_beta_max_with_exit_3() {
    let out = run(&["verify", "--beta-max", "1.0", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_seed_defaults_to_the_environment_variable() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_lorentz-bridge"))
        .args(["verify", "--suite", "einstein", "--samples", "20"])
        .env("LORENTZ_BRIDGE_SEED", "31337")
        .output()
        .expect("binary runs");
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&with_env)).unwrap();
    assert_eq!(parsed["config"]["seed"].as_u64(), Some(31337));

    // explicit flag wins over the environment
    let with_flag = Command::new(env!("CARGO_BIN_EXE_lorentz-bridge"))
        .args(["verify", "--suite", "einstein", "--samples", "20", "--seed", "1"])
        .env("LORENTZ_BRIDGE_SEED", "31337")
        .output()
        .expect("binary runs");
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&with_flag)).unwrap();
    assert_eq!(parsed["config"]["seed"].as_u64(), Some(1));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# sampling config").unwrap();
    writeln!(file, "seed=99").unwrap();
    writeln!(file, "samples=25").unwrap();
    writeln!(file, "suite=einstein").unwrap();
    let path = file.path().to_str().unwrap();

    let out = run(&["--config", path, "verify"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["config"]["seed"].as_u64(), Some(99));
    assert_eq!(parsed["config"]["n_samples"].as_u64(), Some(25));
    assert_eq!(parsed["verdicts"].as_array().unwrap().len(), 1);

    // flags win on conflict
    let out = run(&["--config", path, "verify", "--seed", "7"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["config"]["seed"].as_u64(), Some(7));
}

#[test]
fn config_file_errors_are_usage_errors() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "this line has no equals sign").unwrap();
    let out = run(&["--config", file.path().to_str().unwrap(), "verify"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--config", "/nonexistent/path.conf", "verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_plain_format_prints_one_line_per_suite() {
    let out = run(&[
        "verify", "--suite", "all", "--samples", "10", "--seed", "3", "--format", "plain",
    ]);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 14);
    assert!(text.trim_end().ends_with("overall: PASS"));
}

#[test]
fn verify_csv_format_is_table_shaped() {
    let out = run(&[
        "verify", "--suite", "lemma", "--samples", "10", "--seed", "3", "--format", "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "suite,samples,max_abs_residual,max_rel_residual,tolerance,pass"
    );
    assert!(lines.next().unwrap().starts_with("direction-lemma,"));
}

#[test]
fn missing_required_flag_names_it() {
    let out = run(&["boost", "--beta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--vector"));
}
